#include "tmw/classify.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "tmw/graph_monoid.hpp"

namespace tmw {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// BFS depths from root, restricted to the vertices of one component.
std::vector<std::size_t> component_depths(const Graph& g, const SccInfo& scc,
                                          std::size_t comp, Vertex root) {
  std::vector<std::size_t> depth(g.vertex_count(), kNone);
  std::deque<Vertex> queue{root};
  depth[root] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (scc.component_of[w] == comp && depth[w] == kNone) {
        depth[w] = depth[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return depth;
}

unsigned component_period(const Graph& g, const SccInfo& scc, std::size_t comp,
                          Vertex root) {
  auto depth = component_depths(g, scc, comp, root);
  long long gcd = 0;
  for (const Vertex u : scc.components[comp]) {
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (scc.component_of[w] != comp) {
        continue;
      }
      long long diff = static_cast<long long>(depth[u]) + 1 -
                       static_cast<long long>(depth[w]);
      gcd = std::gcd(gcd, diff);
    }
  }
  return static_cast<unsigned>(gcd < 0 ? -gcd : gcd);
}

}  // namespace

unsigned period_of_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error("vertex index out of range");
  }
  SccInfo scc = strongly_connected_components(g);
  std::size_t comp = scc.component_of[v];
  if (!scc.nontrivial[comp]) {
    return 0;
  }
  return component_period(g, scc, comp, v);
}

unsigned period_of_graph(const Graph& g) {
  SccInfo scc = strongly_connected_components(g);
  if (scc.size() != 1) {
    throw Error("period_of_graph requires a strongly connected graph");
  }
  if (g.edge_count() == 0) {
    throw Error("period_of_graph requires at least one edge");
  }
  unsigned period = 0;
  bool first = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    unsigned p = component_period(g, scc, 0, v);
    if (first) {
      period = p;
      first = false;
    } else if (p != period) {
      // Would contradict Pask-Rho; treated as an internal defect.
      throw Error("vertex periods disagree: " + std::to_string(period) + " vs " +
                  std::to_string(p) + " at " + g.vertex_name(v));
    }
  }
  return period;
}

Decomposition decompose(const Graph& g, Vertex base) {
  if (base >= g.vertex_count()) {
    throw Error("unknown base vertex");
  }
  if (!is_strongly_connected(g)) {
    throw Error("decompose requires a strongly connected graph");
  }
  if (!g.sources().empty()) {
    throw Error("decompose requires a graph with no sources");
  }
  Decomposition out;
  out.d = period_of_graph(g);
  out.residue_classes.assign(out.d, {});

  // Distances from the base; all path lengths to a fixed vertex agree mod d,
  // so the shortest one fixes the residue.
  std::vector<std::size_t> dist(g.vertex_count(), kNone);
  std::deque<Vertex> queue{base};
  dist[base] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (dist[w] == kNone) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out.residue_classes[dist[v] % out.d].push_back(v);
  }
  for (const auto& cls : out.residue_classes) {
    if (cls.empty()) {
      throw Error("empty residue class; period computation is inconsistent");
    }
  }
  for (unsigned i = 0; i < out.d; ++i) {
    out.ideal_representatives.push_back(
        MonoidExpr::generator(base, static_cast<int>(i)));
  }
  return out;
}

WindowCheck decompose_window_check(const Graph& g, Vertex base,
                                   const Decomposition& dec, int window_hi,
                                   std::size_t cap) {
  WindowCheck out;
  if (dec.d <= 1) {
    // Nothing to separate.
    out.generators_checked =
        g.vertex_count() * static_cast<std::size_t>(window_hi + 1);
    return out;
  }
  FlowContext ctx(g);
  MonoidExpr base_gen = MonoidExpr::generator(base);
  for (int j = 0; j <= window_hi; ++j) {
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
      ++out.generators_checked;
      MonoidExpr gen = MonoidExpr::generator(w, j);
      if (!leq_talented(ctx, gen, base_gen, cap).is_yes()) {
        continue;
      }
      for (unsigned i = 1; i < dec.d; ++i) {
        if (leq_talented(ctx, gen, base_gen.shifted(static_cast<int>(i)), cap)
                .is_yes()) {
          std::ostringstream msg;
          msg << g.vertex_name(w) << "(" << j << ") certified in ["
              << g.vertex_name(base) << "] and in the shift by " << i;
          out.violations.push_back(msg.str());
        }
      }
    }
  }
  return out;
}

bool condition_l(const Graph& g) {
  SccInfo scc = strongly_connected_components(g);
  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (!scc.nontrivial[c]) {
      continue;
    }
    // A cycle without an exit shows up as a bare-cycle component whose
    // vertices have total out-degree 1.
    bool bare = true;
    for (Vertex v : scc.components[c]) {
      if (g.out_degree(v) != 1) {
        bare = false;
        break;
      }
    }
    if (bare) {
      return false;
    }
  }
  return true;
}

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::SingleCycleNoExit:
      return "single-cycle-no-exit";
    case CycleKind::Extreme:
      return "extreme";
    case CycleKind::SingleCycleNoReturnExit:
      return "single-cycle-no-return-exit";
    default:
      return "mixed-non-terminal";
  }
}

namespace {

// Shortest cycle through `root` using only edges inside its component.
std::vector<Edge> witness_cycle_through(const Graph& g, const SccInfo& scc,
                                        std::size_t comp, Vertex root) {
  // BFS over component edges recording parents, then close with an edge
  // root -> start of the BFS path.
  std::vector<Edge> parent_edge(g.vertex_count(), kNone);
  std::vector<std::size_t> depth(g.vertex_count(), kNone);
  std::deque<Vertex> queue;
  for (Edge e : g.out_edges(root)) {
    Vertex w = g.edge_range(e);
    if (scc.component_of[w] != comp) {
      continue;
    }
    if (w == root) {
      return {e};  // loop
    }
    if (depth[w] == kNone) {
      depth[w] = 1;
      parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (scc.component_of[w] != comp) {
        continue;
      }
      if (w == root) {
        std::vector<Edge> cycle{e};
        for (Vertex at = u; at != root;) {
          Edge pe = parent_edge[at];
          cycle.push_back(pe);
          at = g.edge_source(pe);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (depth[w] == kNone) {
        depth[w] = depth[u] + 1;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  throw Error("no cycle through a vertex of a nontrivial component");
}

}  // namespace

CycleTaxonomy classify_cycles(const Graph& g) {
  SccInfo scc = strongly_connected_components(g);
  CycleTaxonomy out;
  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (!scc.nontrivial[c]) {
      continue;
    }
    bool bare = true;
    for (Vertex v : scc.components[c]) {
      std::size_t internal = 0;
      for (Edge e : g.out_edges(v)) {
        if (scc.component_of[g.edge_range(e)] == c) {
          ++internal;
        }
      }
      if (internal != 1) {
        bare = false;
        break;
      }
    }
    bool terminal = scc.is_terminal(c);
    CycleKind kind;
    if (bare) {
      kind = terminal ? CycleKind::SingleCycleNoExit
                      : CycleKind::SingleCycleNoReturnExit;
    } else {
      kind = terminal ? CycleKind::Extreme : CycleKind::MixedNonTerminal;
    }
    CycleClass cls;
    cls.kind = kind;
    cls.members = scc.components[c];
    cls.witness_cycle = witness_cycle_through(g, scc, c, scc.components[c].front());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

std::vector<Vertex> line_points(const Graph& g) {
  SccInfo scc = strongly_connected_components(g);
  std::vector<char> bad(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    bad[v] = g.out_degree(v) >= 2 || scc.nontrivial[scc.component_of[v]];
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& reach = g.reachable_set(v);
    bool ok = true;
    for (Vertex w = 0; w < g.vertex_count() && ok; ++w) {
      if (reach[w] && bad[w]) {
        ok = false;
      }
    }
    if (ok) {
      out.push_back(v);
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

PrimaryColours primary_colours(const Graph& g) {
  PrimaryColours out;
  out.p_l = line_points(g);
  CycleTaxonomy taxonomy = classify_cycles(g);
  for (const auto& cls : taxonomy.classes) {
    if (cls.kind == CycleKind::SingleCycleNoExit) {
      out.p_c.insert(out.p_c.end(), cls.members.begin(), cls.members.end());
    } else if (cls.kind == CycleKind::Extreme) {
      out.p_ec.insert(out.p_ec.end(), cls.members.begin(), cls.members.end());
    }
  }
  std::sort(out.p_c.begin(), out.p_c.end());
  std::sort(out.p_ec.begin(), out.p_ec.end());

  std::vector<Vertex> lce;
  lce.insert(lce.end(), out.p_l.begin(), out.p_l.end());
  lce.insert(lce.end(), out.p_c.begin(), out.p_c.end());
  lce.insert(lce.end(), out.p_ec.begin(), out.p_ec.end());
  std::sort(lce.begin(), lce.end());

  // v ~ w when they flow to a common vertex; an equivalence on P_lce.
  UnionFind uf(lce.size());
  for (std::size_t i = 0; i < lce.size(); ++i) {
    const auto& ri = g.reachable_set(lce[i]);
    for (std::size_t j = i + 1; j < lce.size(); ++j) {
      const auto& rj = g.reachable_set(lce[j]);
      for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (ri[w] && rj[w]) {
          uf.unite(i, j);
          break;
        }
      }
    }
  }
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::size_t> class_of(lce.size(), kNone);
  for (std::size_t i = 0; i < lce.size(); ++i) {
    std::size_t root = uf.find(i);
    if (class_of[root] == kNone) {
      class_of[root] = classes.size();
      classes.emplace_back();
    }
    classes[class_of[root]].push_back(lce[i]);
  }
  auto colour_of = [&](Vertex v) {
    if (std::binary_search(out.p_c.begin(), out.p_c.end(), v)) {
      return 1;
    }
    if (std::binary_search(out.p_ec.begin(), out.p_ec.end(), v)) {
      return 2;
    }
    return 0;
  };
  for (auto& cls : classes) {
    int colour = colour_of(cls.front());
    for (Vertex v : cls) {
      if (colour_of(v) != colour) {
        throw Error("a ~-class crosses colour sets");
      }
    }
    if (colour == 0) {
      out.gamma_l.push_back(std::move(cls));
    } else if (colour == 1) {
      out.gamma_c.push_back(std::move(cls));
    } else {
      out.gamma_ec.push_back(std::move(cls));
    }
  }
  return out;
}

bool is_hereditary(const Graph& g, const std::vector<Vertex>& h) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : h) {
    in.at(v) = 1;
  }
  for (Vertex v : h) {
    for (Edge e : g.out_edges(v)) {
      if (!in[g.edge_range(e)]) {
        return false;
      }
    }
  }
  return true;
}

bool is_cofinal(const Graph& g, const std::vector<Vertex>& h) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : h) {
    in.at(v) = 1;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& reach = g.reachable_set(v);
    bool hits = false;
    for (Vertex w = 0; w < g.vertex_count() && !hits; ++w) {
      hits = reach[w] && in[w];
    }
    if (!hits) {
      return false;
    }
  }
  return true;
}

bool essential_check(const Graph& g, const std::vector<Vertex>& h) {
  return is_hereditary(g, h) && is_cofinal(g, h);
}

GroupCheckResult group_check_graph_monoid(const Graph& g, std::size_t cap) {
  if (g.vertex_count() == 0) {
    throw Error("group check requires a nonempty graph");
  }
  if (!g.sources().empty()) {
    throw Error("group check requires a graph with no sources");
  }
  GroupCheckResult out;
  out.graph_criterion = is_strongly_connected(g) && condition_l(g);

  // M_E minus zero is a group exactly when every pair of nonzero elements is
  // comparable. On generators that reduces to u <= v for every ordered pair
  // plus 2u <= u for every u: an arbitrary sum of n generators then sits
  // below n copies of any single generator, which doubling absorbs.
  Tri verdict = Tri::yes("all generator pairs comparable and doubling absorbed");
  std::optional<Tri> pending_unknown;
  for (Vertex u = 0; u < g.vertex_count() && !verdict.is_no(); ++u) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      Tri r = leq_graph_monoid(g, MonoidExpr::generator(u),
                               MonoidExpr::generator(v), cap);
      if (r.is_no()) {
        verdict = Tri::no(g.vertex_name(u) + " <= " + g.vertex_name(v) +
                          " fails: " + r.certificate);
        break;
      }
      if (r.is_unknown() && !pending_unknown) {
        pending_unknown = Tri::unknown(g.vertex_name(u) + " <= " +
                                       g.vertex_name(v) + ": " + r.certificate);
      }
    }
    if (verdict.is_no()) {
      break;
    }
    Tri dbl = leq_graph_monoid(g, MonoidExpr::generator(u, 0, 2),
                               MonoidExpr::generator(u), cap);
    if (dbl.is_no()) {
      verdict = Tri::no("2*" + g.vertex_name(u) + " <= " + g.vertex_name(u) +
                        " fails: " + dbl.certificate);
    } else if (dbl.is_unknown() && !pending_unknown) {
      pending_unknown = Tri::unknown("2*" + g.vertex_name(u) + " <= " +
                                     g.vertex_name(u) + ": " + dbl.certificate);
    }
  }
  if (!verdict.is_no() && pending_unknown) {
    verdict = *pending_unknown;
  }
  out.verdict = std::move(verdict);
  return out;
}

Graph strongly_connected_component(const Graph& g) {
  std::vector<char> removed(g.vertex_count(), 0);
  for (;;) {
    bool changed = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (removed[v]) {
        continue;
      }
      bool incoming = false;
      for (Edge e : g.in_edges(v)) {
        if (!removed[g.edge_source(e)]) {
          incoming = true;
          break;
        }
      }
      bool outgoing = false;
      for (Edge e : g.out_edges(v)) {
        if (!removed[g.edge_range(e)]) {
          outgoing = true;
          break;
        }
      }
      // A regular source of the current graph: no live in-edges, some live
      // out-edge.
      if (!incoming && outgoing) {
        removed[v] = 1;
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
  }
  std::vector<std::string> vertices;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!removed[v]) {
      vertices.push_back(g.vertex_name(v));
    }
  }
  std::vector<Graph::EdgeDecl> edges;
  for (Edge e = 0; e < g.edge_count(); ++e) {
    if (!removed[g.edge_source(e)] && !removed[g.edge_range(e)]) {
      edges.push_back(Graph::EdgeDecl{g.edge_name(e),
                                      g.vertex_name(g.edge_source(e)),
                                      g.vertex_name(g.edge_range(e))});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

PisResult classify_pis(const Graph& g) {
  PisResult out;
  SccInfo scc = strongly_connected_components(g);
  bool has_cycle = false;
  for (std::size_t c = 0; c < scc.size(); ++c) {
    has_cycle = has_cycle || scc.nontrivial[c];
  }
  if (!has_cycle || !condition_l(g)) {
    return out;
  }
  // Every vertex connects to every cycle, at component granularity.
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t c = 0; c < scc.size(); ++c) {
      if (!scc.nontrivial[c]) {
        continue;
      }
      if (!g.reaches(u, scc.components[c].front())) {
        return out;
      }
    }
  }
  out.pis = true;
  out.d = period_of_graph(strongly_connected_component(g));
  return out;
}

ClassificationReport classify(const Graph& g) {
  ClassificationReport r;
  r.strongly_connected = is_strongly_connected(g);
  if (r.strongly_connected) {
    r.period = g.edge_count() == 0 ? 0 : period_of_graph(g);
  }
  r.condition_l = condition_l(g);
  r.taxonomy = classify_cycles(g);
  r.colours = primary_colours(g);
  r.pis = classify_pis(g);
  return r;
}

namespace {

nlohmann::ordered_json names_of(const Graph& g, const std::vector<Vertex>& vs) {
  auto arr = nlohmann::ordered_json::array();
  for (Vertex v : vs) {
    arr.push_back(g.vertex_name(v));
  }
  return arr;
}

nlohmann::ordered_json names_of(const Graph& g,
                                const std::vector<std::vector<Vertex>>& sets) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : sets) {
    arr.push_back(names_of(g, s));
  }
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Graph& g, const ClassificationReport& r) {
  nlohmann::ordered_json j;
  j["strongly_connected"] = r.strongly_connected;
  j["period"] = r.period ? nlohmann::ordered_json(*r.period)
                         : nlohmann::ordered_json(nullptr);
  j["condition_L"] = r.condition_l;
  auto taxonomy = nlohmann::ordered_json::array();
  for (const auto& cls : r.taxonomy.classes) {
    nlohmann::ordered_json jc;
    jc["kind"] = to_string(cls.kind);
    jc["members"] = names_of(g, cls.members);
    auto cyc = nlohmann::ordered_json::array();
    for (Edge e : cls.witness_cycle) {
      cyc.push_back(g.edge_name(e));
    }
    jc["witness_cycle"] = std::move(cyc);
    taxonomy.push_back(std::move(jc));
  }
  j["taxonomy"] = std::move(taxonomy);
  j["P_l"] = names_of(g, r.colours.p_l);
  j["P_c"] = names_of(g, r.colours.p_c);
  j["P_ec"] = names_of(g, r.colours.p_ec);
  j["Gamma_l"] = names_of(g, r.colours.gamma_l);
  j["Gamma_c"] = names_of(g, r.colours.gamma_c);
  j["Gamma_ec"] = names_of(g, r.colours.gamma_ec);
  j["pis"] = r.pis.pis;
  if (r.pis.d) {
    j["d"] = *r.pis.d;
  }
  return j;
}

}  // namespace tmw
