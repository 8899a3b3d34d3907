#ifndef TMW_MOVES_HPP_
#define TMW_MOVES_HPP_

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmw/expr.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"

namespace tmw {

/// Ordered partition of r^{-1}(v) per vertex v with incoming edges. Vertices
/// without an entry get the trivial one-block partition.
struct InSplitPlan {
  std::map<Vertex, std::vector<std::vector<Edge>>> blocks;

  static InSplitPlan from_json(const Graph& g, const nlohmann::json& j);
  void validate(const Graph& g) const;
};

/// Ordered partition of s^{-1}(v) per vertex v with outgoing edges.
struct OutSplitPlan {
  std::map<Vertex, std::vector<std::vector<Edge>>> blocks;

  static OutSplitPlan from_json(const Graph& g, const nlohmann::json& j);
  void validate(const Graph& g) const;
};

/// Move (S): drop a regular source and its outgoing edges.
Graph move_source_removal(const Graph& g, Vertex v);

/// Move (I): vertices with incoming edges split into one copy `v.i` per
/// block; an edge e out of a split vertex is copied as `e.j` from `s(e).j`,
/// always landing on the copy of r(e) indexed by e's block.
Graph move_in_split(const Graph& g, const InSplitPlan& plan);

/// Move (O): non-sink vertices split into copies `v^i`; an edge e into a
/// non-sink vertex is copied as `e^j` onto `r(e)^j`, always leaving from the
/// copy of s(e) indexed by e's block.
Graph move_out_split(const Graph& g, const OutSplitPlan& plan);

/// Assignment of a codomain expression to every domain vertex generator at
/// level 0, extended to all of the monoid additively and shift-equivariantly.
struct GeneratorMap {
  const Graph* domain = nullptr;
  const Graph* codomain = nullptr;
  std::vector<MonoidExpr> image;  // indexed by domain vertex

  MonoidExpr apply(const MonoidExpr& x) const;
};

/// A candidate isomorphism together with its paired inverse.
struct MapPair {
  GeneratorMap forward;
  GeneratorMap inverse;
};

/// In-split: v -> v.1 (the copy index is immaterial once the map is proven
/// well defined); inverse collapses every copy back to v.
MapPair induced_map_in_split(const Graph& g, const Graph& f, const InSplitPlan& plan);

/// Out-split: v -> sum of all copies v^i (sinks stay fixed); inverse sends
/// v^i to the ranges of its block, shifted one level up.
MapPair induced_map_out_split(const Graph& g, const Graph& f, const OutSplitPlan& plan);

/// Source removal: the inclusion u -> u of the smaller graph; inverse expands
/// the removed source as the sum of its edge ranges, shifted one level up.
MapPair induced_map_source_removal(const Graph& g, const Graph& f, Vertex v);

struct VerifyMapResult {
  Tri well_defined;
  Tri inverse_ok;
  bool both_yes() const { return well_defined.is_yes() && inverse_ok.is_yes(); }
};

/// Checks, for every level in the window, that the forward map respects the
/// defining relations and that the paired maps compose to the identity on
/// window generators. Equalities are decided exactly.
VerifyMapResult verify_map(const MapPair& maps, int window_lo, int window_hi);

/// Default verification window: levels [0, |E0| + 2] of the domain.
std::pair<int, int> default_verify_window(const Graph& domain);

}  // namespace tmw

#endif  // TMW_MOVES_HPP_
