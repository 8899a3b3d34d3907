#ifndef TMW_TESTS_ORACLES_HPP_
#define TMW_TESTS_ORACLES_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tmw/expr.hpp"
#include "tmw/graph.hpp"

// Independent reference computations for the test suites. These deliberately
// avoid the library's FlowContext / FlowState machinery: expressions are raw
// (vertex, level) -> multiplicity maps and flows are applied entry by entry
// in caller-chosen or randomized order.

namespace tmw::testsupport {

// gcd of the lengths of closed walks at v up to 3n, via boolean matrix
// powers. Every closed walk decomposes into simple cycles of the component,
// and each such cycle length is a gcd of walk lengths <= 3n, so this equals
// the gcd over all closed walks.
inline unsigned period_oracle(const Graph& g, Vertex v) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (Edge e = 0; e < g.edge_count(); ++e) {
    adj[g.edge_source(e)][g.edge_range(e)] = 1;
  }
  std::vector<std::vector<char>> power = adj;
  long long gcd = 0;
  for (std::size_t len = 1; len <= 3 * n; ++len) {
    if (len > 1) {
      std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!power[i][k]) {
            continue;
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (adj[k][j]) {
              next[i][j] = 1;
            }
          }
        }
      }
      power = std::move(next);
    }
    if (power[v][v]) {
      gcd = std::gcd(gcd, static_cast<long long>(len));
    }
  }
  return static_cast<unsigned>(gcd);
}

// Reflexive reachability via iterated boolean products.
inline bool reaches_oracle(const Graph& g, Vertex u, Vertex v) {
  if (u == v) {
    return true;
  }
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (Edge e = 0; e < g.edge_count(); ++e) {
    adj[g.edge_source(e)][g.edge_range(e)] = 1;
  }
  std::vector<std::vector<char>> closure = adj;
  for (std::size_t step = 0; step < n; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!closure[i][k]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (adj[k][j]) {
            closure[i][j] = 1;
          }
        }
      }
    }
  }
  return closure[u][v] != 0;
}

using Tokens = std::map<std::pair<Vertex, int>, Mult>;

inline Tokens tokens_of(const MonoidExpr& x) {
  Tokens t;
  for (const auto& [key, mult] : x.terms()) {
    t[{key.vertex, key.level}] = mult;
  }
  return t;
}

inline MonoidExpr expr_of(const Tokens& t) {
  MonoidExpr x;
  for (const auto& [key, mult] : t) {
    x.add(key.first, key.second, mult);
  }
  return x;
}

// Flow every non-sink entry strictly below `frontier`, one entry at a time in
// an order chosen by `rng`. The result does not depend on the order; the
// confluence property test checks exactly that.
inline Tokens flow_tokens(const Graph& g, Tokens t, int frontier, std::mt19937& rng) {
  for (;;) {
    std::vector<std::pair<Vertex, int>> movable;
    for (const auto& [key, mult] : t) {
      if (key.second < frontier && !g.is_sink(key.first)) {
        movable.push_back(key);
      }
    }
    if (movable.empty()) {
      return t;
    }
    std::uniform_int_distribution<std::size_t> pick(0, movable.size() - 1);
    auto key = movable[pick(rng)];
    Mult amount = t[key];
    t.erase(key);
    for (Edge e : g.out_edges(key.first)) {
      t[{g.edge_range(e), key.second + 1}] += amount;
    }
  }
}

// Equality oracle: compare entry-flow results over an extended horizon, far
// past the implementation's stabilisation bound. Sound and complete because
// equal elements share a flow target at a common frontier and unequal ones
// never do.
inline bool eq_oracle(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                      std::mt19937& rng) {
  if (x.is_zero() || y.is_zero()) {
    return x.is_zero() && y.is_zero();
  }
  const int base = std::max(x.max_level(), y.max_level());
  std::size_t nonsink = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    nonsink += g.is_sink(v) ? 0 : 1;
  }
  const int horizon = base + static_cast<int>(4 * nonsink) + 8;
  Tokens tx = tokens_of(x);
  Tokens ty = tokens_of(y);
  for (int level = base; level <= horizon; ++level) {
    tx = flow_tokens(g, std::move(tx), level, rng);
    ty = flow_tokens(g, std::move(ty), level, rng);
    if (tx == ty) {
      return true;
    }
  }
  return false;
}

// Literal congruence-closure oracle on a bounded term universe: breadth-first
// closure of single-unit rewrites in both directions, inside level window
// [level_lo, level_hi] and total multiplicity at most token_cap. Returns
// nullopt when the instance leaves the universe or the node budget.
inline std::optional<bool> congruence_closure_eq(const Graph& g, const MonoidExpr& x,
                                                 const MonoidExpr& y, int level_lo,
                                                 int level_hi, long token_cap,
                                                 std::size_t node_cap) {
  if (x.is_zero() || y.is_zero()) {
    return x.is_zero() && y.is_zero();
  }
  Tokens start = tokens_of(x);
  Tokens goal = tokens_of(y);
  std::set<Tokens> seen{start};
  std::queue<Tokens> frontier;
  frontier.push(start);
  if (start == goal) {
    return true;
  }
  auto total = [](const Tokens& t) {
    Mult sum = 0;
    for (const auto& [key, mult] : t) {
      sum += mult;
    }
    return sum;
  };
  while (!frontier.empty()) {
    if (seen.size() > node_cap) {
      return std::nullopt;
    }
    Tokens cur = frontier.front();
    frontier.pop();
    std::vector<Tokens> nexts;
    // Forward: one unit of v(i) becomes its edge ranges at i+1.
    for (const auto& [key, mult] : cur) {
      auto [v, i] = key;
      if (g.is_sink(v) || i + 1 > level_hi) {
        continue;
      }
      Tokens next = cur;
      if (--next[key] == 0) {
        next.erase(key);
      }
      for (Edge e : g.out_edges(v)) {
        next[{g.edge_range(e), i + 1}] += 1;
      }
      if (total(next) <= token_cap) {
        nexts.push_back(std::move(next));
      }
    }
    // Backward: a fully present right-hand side collapses to one unit of v(i).
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (g.is_sink(v)) {
        continue;
      }
      for (int i = level_lo; i < level_hi; ++i) {
        Tokens rhs;
        for (Edge e : g.out_edges(v)) {
          rhs[{g.edge_range(e), i + 1}] += 1;
        }
        bool present = true;
        for (const auto& [key, mult] : rhs) {
          auto it = cur.find(key);
          if (it == cur.end() || it->second < mult) {
            present = false;
            break;
          }
        }
        if (!present) {
          continue;
        }
        Tokens next = cur;
        for (const auto& [key, mult] : rhs) {
          if ((next[key] -= mult) == 0) {
            next.erase(key);
          }
        }
        next[{v, i}] += 1;
        nexts.push_back(std::move(next));
      }
    }
    for (auto& next : nexts) {
      if (seen.insert(next).second) {
        if (next == goal) {
          return true;
        }
        frontier.push(std::move(next));
      }
    }
  }
  return false;
}

}  // namespace tmw::testsupport

#endif  // TMW_TESTS_ORACLES_HPP_
