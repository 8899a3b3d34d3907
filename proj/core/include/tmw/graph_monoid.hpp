#ifndef TMW_GRAPH_MONOID_HPP_
#define TMW_GRAPH_MONOID_HPP_

#include <cstddef>
#include <cstdint>

#include "tmw/expr.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"

namespace tmw {

/// Default node budget for graph-monoid searches. Flows in F_E can cycle, so
/// termination needs explicit state-space control.
inline constexpr std::size_t kGraphMonoidDefaultCap = 100000;

/// Decide x = y in the graph monoid M_E by breadth-first exploration of
/// partial flows from both sides (memoized multiset encodings). Yes when the
/// explorations meet; no when both reachable sets are exhausted without
/// intersection; unknown when the node budget runs out.
///
/// Levels are forgotten first (the forgetful homomorphism T_E -> M_E), so any
/// expression is accepted.
Tri eq_graph_monoid(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                    std::size_t cap = kGraphMonoidDefaultCap);

/// Decide x <= y in M_E (some z has x + z = y). By the Confluence Lemma this
/// holds exactly when some flow target of y contains some flow target of x as
/// a sub-multiset. Four routes, in order:
///   1. complete-round flows of y are probed for a target that contains x;
///   2. a trapped-support certificate refutes: if the support of x meets a
///      set of vertices that is disjoint from everything reachable from y and
///      closed under keeping one out-edge, a token of x can never be covered;
///   3. a conserved-component certificate refutes: token mass on a bare cycle
///      or lone sink that neither side's world enters is invariant under
///      flows, so the left mass may not exceed the right mass;
///   4. memoized bidirectional search with sub-multiset checks, definitive
///      when both reachable sets are exhausted.
Tri leq_graph_monoid(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                     std::size_t cap = kGraphMonoidDefaultCap);

}  // namespace tmw

#endif  // TMW_GRAPH_MONOID_HPP_
