#ifndef TMW_PARADOX_HPP_
#define TMW_PARADOX_HPP_

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmw/expr.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"

namespace tmw {

/// Parts x_i and shifts a_i witnessing sum x_i >= [T_E] while the shifted sum
/// sits strictly below [T_E], where [T_E] is the order unit.
struct ParadoxWitness {
  std::vector<MonoidExpr> parts;
  std::vector<int> shifts;

  static ParadoxWitness from_json(const Graph& g, const nlohmann::json& j);
  nlohmann::ordered_json to_json(const Graph& g) const;
};

/// Some cycle has an exit, i.e. some vertex on a cycle has out-degree >= 2.
bool is_paradoxical(const Graph& g);

/// The proof construction: pick a vertex u on a shortest exit-bearing cycle
/// (first in declaration order on that cycle), length n. Parts are u plus
/// every other vertex; u is shifted by n, the rest by 0.
ParadoxWitness build_witness(const Graph& g);

/// Yes iff [T_E] <= sum of parts and the shifted sum is strictly below [T_E].
Tri verify_witness(const Graph& g, const ParadoxWitness& w, std::size_t cap);

/// Default cap for witness verification.
std::size_t default_paradox_cap(const Graph& g);

}  // namespace tmw

#endif  // TMW_PARADOX_HPP_
