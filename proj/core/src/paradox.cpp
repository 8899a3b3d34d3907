#include "tmw/paradox.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace tmw {

ParadoxWitness ParadoxWitness::from_json(const Graph& g, const nlohmann::json& j) {
  ParadoxWitness w;
  for (const auto& part : j.at("parts")) {
    w.parts.push_back(MonoidExpr::parse(g, part.get<std::string>()));
  }
  for (const auto& s : j.at("shifts")) {
    w.shifts.push_back(s.get<int>());
  }
  if (w.parts.size() != w.shifts.size()) {
    throw ParseError("witness parts and shifts must have the same length", 0);
  }
  for (const auto& part : w.parts) {
    if (part.is_zero()) {
      throw ParseError("witness parts must be nonzero", 0);
    }
  }
  return w;
}

nlohmann::ordered_json ParadoxWitness::to_json(const Graph& g) const {
  nlohmann::ordered_json j;
  auto parts = nlohmann::ordered_json::array();
  for (const auto& p : this->parts) {
    parts.push_back(p.to_string(g));
  }
  j["parts"] = std::move(parts);
  j["shifts"] = shifts;
  return j;
}

bool is_paradoxical(const Graph& g) {
  SccInfo scc = strongly_connected_components(g);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) >= 2 && scc.nontrivial[scc.component_of[v]]) {
      return true;
    }
  }
  return false;
}

namespace {

// Shortest closed walk through v; the minimum is attained by a cycle.
std::size_t shortest_cycle_length(const Graph& g, Vertex v) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::deque<Vertex> queue;
  for (Edge e : g.out_edges(v)) {
    Vertex w = g.edge_range(e);
    if (w == v) {
      return 1;
    }
    if (dist[w] == kInf) {
      dist[w] = 1;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (w == v) {
        return dist[u] + 1;
      }
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return kInf;
}

// Vertex set of one shortest cycle through v.
std::vector<Vertex> shortest_cycle_vertices(const Graph& g, Vertex v) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::vector<Vertex> parent(g.vertex_count(), kNone);
  std::deque<Vertex> queue;
  Vertex last = kNone;
  for (Edge e : g.out_edges(v)) {
    Vertex w = g.edge_range(e);
    if (w == v) {
      return {v};
    }
    if (dist[w] == kInf) {
      dist[w] = 1;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  while (!queue.empty() && last == kNone) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Edge e : g.out_edges(u)) {
      Vertex w = g.edge_range(e);
      if (w == v) {
        last = u;
        break;
      }
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> members{v};
  for (Vertex at = last; at != v && at != kNone; at = parent[at]) {
    members.push_back(at);
  }
  return members;
}

}  // namespace

ParadoxWitness build_witness(const Graph& g) {
  if (!is_paradoxical(g)) {
    throw Error("graph has no cycle with an exit");
  }
  SccInfo scc = strongly_connected_components(g);
  // Shortest exit-bearing cycle: minimise over bifurcation vertices that lie
  // on a cycle.
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  Vertex best = 0;
  std::size_t best_len = kInf;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) < 2 || !scc.nontrivial[scc.component_of[v]]) {
      continue;
    }
    std::size_t len = shortest_cycle_length(g, v);
    if (len < best_len) {
      best_len = len;
      best = v;
    }
  }
  std::vector<Vertex> cycle = shortest_cycle_vertices(g, best);
  Vertex u = *std::min_element(cycle.begin(), cycle.end());

  ParadoxWitness w;
  w.parts.push_back(MonoidExpr::generator(u));
  w.shifts.push_back(static_cast<int>(best_len));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v != u) {
      w.parts.push_back(MonoidExpr::generator(v));
      w.shifts.push_back(0);
    }
  }
  return w;
}

Tri verify_witness(const Graph& g, const ParadoxWitness& w, std::size_t cap) {
  if (w.parts.size() != w.shifts.size()) {
    throw Error("witness parts and shifts must have the same length");
  }
  MonoidExpr plain;
  MonoidExpr shifted;
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    if (w.parts[i].is_zero()) {
      throw Error("witness parts must be nonzero");
    }
    plain += w.parts[i];
    shifted += w.parts[i].shifted(w.shifts[i]);
  }
  FlowContext ctx(g);
  MonoidExpr unit = order_unit(g);
  Tri covers = leq_talented(ctx, unit, plain, cap);
  Tri strict = lt_talented(ctx, shifted, unit, cap);
  if (covers.is_no()) {
    return Tri::no("parts do not cover the order unit: " + covers.certificate);
  }
  if (strict.is_no()) {
    return Tri::no("shifted sum is not strictly below the order unit: " +
                   strict.certificate);
  }
  if (covers.is_yes() && strict.is_yes()) {
    return Tri::yes("covers the unit and the shifted sum is strictly below it");
  }
  return Tri::unknown(covers.is_yes() ? "strictness check: " + strict.certificate
                                      : "cover check: " + covers.certificate);
}

std::size_t default_paradox_cap(const Graph& g) { return 4 * g.vertex_count() + 4; }

}  // namespace tmw
