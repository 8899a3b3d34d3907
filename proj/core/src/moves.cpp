#include "tmw/moves.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tmw {

namespace {

using BlockMap = std::map<Vertex, std::vector<std::vector<Edge>>>;

BlockMap blocks_from_json(const Graph& g, const nlohmann::json& j) {
  const nlohmann::json* plans = &j;
  if (j.is_object()) {
    plans = &j.at("plans");
  }
  if (!plans->is_array()) {
    throw ParseError("split plan must be an array of {vertex, blocks}", 0);
  }
  BlockMap out;
  for (const auto& entry : *plans) {
    Vertex v = g.vertex(entry.at("vertex").get<std::string>());
    std::vector<std::vector<Edge>> blocks;
    for (const auto& jblock : entry.at("blocks")) {
      std::vector<Edge> block;
      for (const auto& je : jblock) {
        block.push_back(g.edge(je.get<std::string>()));
      }
      blocks.push_back(std::move(block));
    }
    if (!out.emplace(v, std::move(blocks)).second) {
      throw ParseError("duplicate plan entry for vertex '" + g.vertex_name(v) + "'",
                       0);
    }
  }
  return out;
}

void validate_blocks(const Graph& g, const BlockMap& blocks,
                     std::span<const Edge> (Graph::*edge_set)(Vertex) const,
                     const char* what) {
  for (const auto& [v, partition] : blocks) {
    auto expected = (g.*edge_set)(v);
    if (expected.empty()) {
      throw Error(std::string("plan names vertex '") + g.vertex_name(v) +
                  "' which has no " + what + " edges");
    }
    std::set<Edge> seen;
    for (const auto& block : partition) {
      if (block.empty()) {
        throw Error("empty block for vertex '" + g.vertex_name(v) + "'");
      }
      for (Edge e : block) {
        if (std::find(expected.begin(), expected.end(), e) == expected.end()) {
          throw Error("edge '" + g.edge_name(e) + "' is not " + what +
                      " at vertex '" + g.vertex_name(v) + "'");
        }
        if (!seen.insert(e).second) {
          throw Error("edge '" + g.edge_name(e) + "' appears in two blocks");
        }
      }
    }
    if (seen.size() != expected.size()) {
      throw Error("partition at vertex '" + g.vertex_name(v) +
                  "' does not cover all " + what + " edges");
    }
  }
}

// Number of blocks at v, with an implicit trivial partition when absent.
std::size_t block_count(const BlockMap& blocks, Vertex v) {
  auto it = blocks.find(v);
  return it == blocks.end() ? 1 : it->second.size();
}

// 1-based block index of edge e at vertex v.
std::size_t block_index(const BlockMap& blocks, Vertex v, Edge e) {
  auto it = blocks.find(v);
  if (it == blocks.end()) {
    return 1;
  }
  for (std::size_t i = 0; i < it->second.size(); ++i) {
    if (std::find(it->second[i].begin(), it->second[i].end(), e) !=
        it->second[i].end()) {
      return i + 1;
    }
  }
  throw Error("edge '" + std::to_string(e) + "' missing from its partition");
}

std::string copy_name(const std::string& base, char sep, std::size_t i) {
  return base + sep + std::to_string(i);
}

}  // namespace

InSplitPlan InSplitPlan::from_json(const Graph& g, const nlohmann::json& j) {
  InSplitPlan plan{blocks_from_json(g, j)};
  plan.validate(g);
  return plan;
}

void InSplitPlan::validate(const Graph& g) const {
  validate_blocks(g, blocks, &Graph::in_edges, "incoming");
}

OutSplitPlan OutSplitPlan::from_json(const Graph& g, const nlohmann::json& j) {
  OutSplitPlan plan{blocks_from_json(g, j)};
  plan.validate(g);
  return plan;
}

void OutSplitPlan::validate(const Graph& g) const {
  validate_blocks(g, blocks, &Graph::out_edges, "outgoing");
}

Graph move_source_removal(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error("unknown vertex");
  }
  if (!g.is_source(v) || g.is_sink(v)) {
    throw Error("'" + g.vertex_name(v) + "' is not a regular source");
  }
  std::vector<std::string> vertices;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (u != v) {
      vertices.push_back(g.vertex_name(u));
    }
  }
  std::vector<Graph::EdgeDecl> edges;
  for (Edge e = 0; e < g.edge_count(); ++e) {
    if (g.edge_source(e) != v) {
      edges.push_back(Graph::EdgeDecl{g.edge_name(e),
                                      g.vertex_name(g.edge_source(e)),
                                      g.vertex_name(g.edge_range(e))});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph move_in_split(const Graph& g, const InSplitPlan& plan) {
  plan.validate(g);
  std::vector<std::string> vertices;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_source(v)) {
      vertices.push_back(g.vertex_name(v));
    } else {
      for (std::size_t i = 1; i <= block_count(plan.blocks, v); ++i) {
        vertices.push_back(copy_name(g.vertex_name(v), '.', i));
      }
    }
  }
  std::vector<Graph::EdgeDecl> edges;
  for (Edge e = 0; e < g.edge_count(); ++e) {
    Vertex u = g.edge_source(e);
    Vertex w = g.edge_range(e);
    std::size_t i = block_index(plan.blocks, w, e);
    std::string target = copy_name(g.vertex_name(w), '.', i);
    if (g.is_source(u)) {
      edges.push_back(Graph::EdgeDecl{g.edge_name(e), g.vertex_name(u), target});
    } else {
      for (std::size_t j = 1; j <= block_count(plan.blocks, u); ++j) {
        edges.push_back(Graph::EdgeDecl{copy_name(g.edge_name(e), '.', j),
                                        copy_name(g.vertex_name(u), '.', j),
                                        target});
      }
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph move_out_split(const Graph& g, const OutSplitPlan& plan) {
  plan.validate(g);
  std::vector<std::string> vertices;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      vertices.push_back(g.vertex_name(v));
    } else {
      for (std::size_t i = 1; i <= block_count(plan.blocks, v); ++i) {
        vertices.push_back(copy_name(g.vertex_name(v), '^', i));
      }
    }
  }
  std::vector<Graph::EdgeDecl> edges;
  for (Edge e = 0; e < g.edge_count(); ++e) {
    Vertex u = g.edge_source(e);
    Vertex w = g.edge_range(e);
    std::size_t i = block_index(plan.blocks, u, e);
    std::string source = copy_name(g.vertex_name(u), '^', i);
    if (g.is_sink(w)) {
      edges.push_back(Graph::EdgeDecl{g.edge_name(e), source, g.vertex_name(w)});
    } else {
      for (std::size_t j = 1; j <= block_count(plan.blocks, w); ++j) {
        edges.push_back(Graph::EdgeDecl{copy_name(g.edge_name(e), '^', j), source,
                                        copy_name(g.vertex_name(w), '^', j)});
      }
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

MonoidExpr GeneratorMap::apply(const MonoidExpr& x) const {
  MonoidExpr out;
  for (const auto& [key, mult] : x.terms()) {
    MonoidExpr img = image[key.vertex].shifted(key.level);
    for (const auto& [ikey, imult] : img.terms()) {
      out.add(ikey.vertex, ikey.level, imult * mult);
    }
  }
  return out;
}

MapPair induced_map_in_split(const Graph& g, const Graph& f, const InSplitPlan& plan) {
  plan.validate(g);
  MapPair maps;
  maps.forward.domain = &g;
  maps.forward.codomain = &f;
  maps.forward.image.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::string name = g.is_source(v) ? g.vertex_name(v)
                                      : copy_name(g.vertex_name(v), '.', 1);
    maps.forward.image[v] = MonoidExpr::generator(f.vertex(name));
  }
  maps.inverse.domain = &f;
  maps.inverse.codomain = &g;
  maps.inverse.image.resize(f.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_source(v)) {
      maps.inverse.image[f.vertex(g.vertex_name(v))] = MonoidExpr::generator(v);
    } else {
      for (std::size_t i = 1; i <= block_count(plan.blocks, v); ++i) {
        maps.inverse.image[f.vertex(copy_name(g.vertex_name(v), '.', i))] =
            MonoidExpr::generator(v);
      }
    }
  }
  return maps;
}

MapPair induced_map_out_split(const Graph& g, const Graph& f,
                              const OutSplitPlan& plan) {
  plan.validate(g);
  MapPair maps;
  maps.forward.domain = &g;
  maps.forward.codomain = &f;
  maps.forward.image.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      maps.forward.image[v] = MonoidExpr::generator(f.vertex(g.vertex_name(v)));
    } else {
      MonoidExpr sum;
      for (std::size_t i = 1; i <= block_count(plan.blocks, v); ++i) {
        sum.add(f.vertex(copy_name(g.vertex_name(v), '^', i)), 0, 1);
      }
      maps.forward.image[v] = std::move(sum);
    }
  }
  maps.inverse.domain = &f;
  maps.inverse.codomain = &g;
  maps.inverse.image.resize(f.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      maps.inverse.image[f.vertex(g.vertex_name(v))] = MonoidExpr::generator(v);
      continue;
    }
    auto it = plan.blocks.find(v);
    const std::size_t m = block_count(plan.blocks, v);
    for (std::size_t i = 1; i <= m; ++i) {
      MonoidExpr sum;
      if (it == plan.blocks.end()) {
        for (Edge e : g.out_edges(v)) {
          sum.add(g.edge_range(e), 1, 1);
        }
      } else {
        for (Edge e : it->second[i - 1]) {
          sum.add(g.edge_range(e), 1, 1);
        }
      }
      maps.inverse.image[f.vertex(copy_name(g.vertex_name(v), '^', i))] =
          std::move(sum);
    }
  }
  return maps;
}

MapPair induced_map_source_removal(const Graph& g, const Graph& f, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error("unknown vertex");
  }
  if (!g.is_source(v) || g.is_sink(v)) {
    throw Error("'" + g.vertex_name(v) + "' is not a regular source");
  }
  MapPair maps;
  maps.forward.domain = &f;
  maps.forward.codomain = &g;
  maps.forward.image.resize(f.vertex_count());
  for (Vertex u = 0; u < f.vertex_count(); ++u) {
    maps.forward.image[u] = MonoidExpr::generator(g.vertex(f.vertex_name(u)));
  }
  maps.inverse.domain = &g;
  maps.inverse.codomain = &f;
  maps.inverse.image.resize(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (u == v) {
      MonoidExpr sum;
      for (Edge e : g.out_edges(v)) {
        sum.add(f.vertex(g.vertex_name(g.edge_range(e))), 1, 1);
      }
      maps.inverse.image[u] = std::move(sum);
    } else {
      maps.inverse.image[u] = MonoidExpr::generator(f.vertex(g.vertex_name(u)));
    }
  }
  return maps;
}

VerifyMapResult verify_map(const MapPair& maps, int window_lo, int window_hi) {
  if (window_lo > window_hi) {
    throw Error("verification window requires lo <= hi");
  }
  const Graph& dom = *maps.forward.domain;
  const Graph& cod = *maps.forward.codomain;
  FlowContext dom_ctx(dom);
  FlowContext cod_ctx(cod);

  VerifyMapResult out{Tri::yes("all window relations preserved"),
                      Tri::yes("identity on all window generators")};

  for (Vertex v = 0; v < dom.vertex_count() && out.well_defined.is_yes(); ++v) {
    if (dom.is_sink(v)) {
      continue;
    }
    for (int i = window_lo; i <= window_hi; ++i) {
      MonoidExpr lhs = maps.forward.apply(MonoidExpr::generator(v, i));
      MonoidExpr relation;
      for (Edge e : dom.out_edges(v)) {
        relation.add(dom.edge_range(e), i + 1, 1);
      }
      MonoidExpr rhs = maps.forward.apply(relation);
      if (!eq_talented(cod_ctx, lhs, rhs)) {
        std::ostringstream cert;
        cert << "relation at " << dom.vertex_name(v) << "(" << i
             << ") not preserved";
        out.well_defined = Tri::no(cert.str());
        break;
      }
    }
  }

  for (Vertex v = 0; v < dom.vertex_count() && out.inverse_ok.is_yes(); ++v) {
    for (int i = window_lo; i <= window_hi; ++i) {
      MonoidExpr gen = MonoidExpr::generator(v, i);
      if (!eq_talented(dom_ctx, maps.inverse.apply(maps.forward.apply(gen)), gen)) {
        out.inverse_ok = Tri::no("round trip differs at " + dom.vertex_name(v) +
                                 "(" + std::to_string(i) + ")");
        break;
      }
    }
  }
  for (Vertex w = 0; w < cod.vertex_count() && out.inverse_ok.is_yes(); ++w) {
    for (int i = window_lo; i <= window_hi; ++i) {
      MonoidExpr gen = MonoidExpr::generator(w, i);
      if (!eq_talented(cod_ctx, maps.forward.apply(maps.inverse.apply(gen)), gen)) {
        out.inverse_ok = Tri::no("round trip differs at " + cod.vertex_name(w) +
                                 "(" + std::to_string(i) + ")");
        break;
      }
    }
  }
  return out;
}

std::pair<int, int> default_verify_window(const Graph& domain) {
  return {0, static_cast<int>(domain.vertex_count()) + 2};
}

}  // namespace tmw
