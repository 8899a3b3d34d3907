#ifndef TMW_FLOW_HPP_
#define TMW_FLOW_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmw/expr.hpp"
#include "tmw/graph.hpp"

namespace tmw {

enum class Verdict { Yes, No, Unknown };

/// Three-valued answer with a short certificate. Unknown only arises from
/// capped searches, never from the exact equality decider.
struct Tri {
  Verdict verdict;
  std::string certificate;

  static Tri yes(std::string cert) { return {Verdict::Yes, std::move(cert)}; }
  static Tri no(std::string cert) { return {Verdict::No, std::move(cert)}; }
  static Tri unknown(std::string cert) { return {Verdict::Unknown, std::move(cert)}; }

  bool is_yes() const { return verdict == Verdict::Yes; }
  bool is_no() const { return verdict == Verdict::No; }
  bool is_unknown() const { return verdict == Verdict::Unknown; }
};

const char* to_string(Verdict v);

/// Level-stratified normal form of an expression: all non-sink mass sits at
/// the frontier level (the live vector), while mass that hit a sink is frozen
/// at the level where it appeared (the deposits).
struct FlowState {
  int frontier = 0;
  std::vector<Mult> live;           // indexed by FlowContext non-sink slot
  std::map<TermKey, Mult> deposits; // sink vertex at its freeze level

  friend bool operator==(const FlowState&, const FlowState&) = default;
};

/// Precomputed flow structure of a graph: the non-sink slots and, per slot,
/// the multiplicities with which one flow step feeds other slots and sinks.
class FlowContext {
 public:
  explicit FlowContext(const Graph& g);

  const Graph& graph() const { return *g_; }
  std::size_t nonsink_count() const { return nonsink_.size(); }
  Vertex nonsink_vertex(std::size_t slot) const { return nonsink_[slot]; }
  std::optional<std::size_t> slot_of(Vertex v) const;

  /// Exhaustively flow every non-sink occurrence below `frontier`; sinks
  /// freeze where they appear. Requires frontier >= max level of x.
  FlowState normal_form(const MonoidExpr& x, int frontier) const;

  /// Advance the frontier by one level.
  void advance(FlowState& s) const;

  /// Reconstruct an expression (live generators at the frontier + deposits).
  MonoidExpr to_expr(const FlowState& s) const;

 private:
  struct Arrow {
    std::size_t slot;
    std::uint64_t count;
  };
  struct SinkArrow {
    Vertex sink;
    std::uint64_t count;
  };

  const Graph* g_;
  std::vector<Vertex> nonsink_;
  std::vector<std::size_t> slot_;  // vertex -> slot, npos for sinks
  std::vector<std::vector<Arrow>> live_arrows_;
  std::vector<std::vector<SinkArrow>> sink_arrows_;
};

FlowState normal_form(const Graph& g, const MonoidExpr& x, int frontier);

/// Exact decision of x = y in the talented monoid. Both sides are flowed to
/// the common max level and then advanced up to |non-sink vertices| further
/// steps; the difference of live vectors evolves by a fixed integer matrix
/// whose kernel chain stabilises within that many steps, and any mismatched
/// deposit is permanent, so failure after the bound is definitive.
bool eq_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y);
bool eq_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y);

/// Order decision for x <= y (some z has x + z = y). Yes when the state of x
/// is pointwise below the state of y at some frontier within `cap` steps past
/// the common level (monotone: it then stays below); no when a frozen deposit
/// of x exceeds the matching deposit of y; unknown when the cap runs out.
Tri leq_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                 std::size_t cap);
Tri leq_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y,
                 std::size_t cap);

/// Strict order: leq yes and eq false.
Tri lt_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                std::size_t cap);
Tri lt_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y,
                std::size_t cap);

/// Default step budget for leq: |E0|^2 plus the level span of the inputs.
std::size_t default_leq_cap(const Graph& g, const MonoidExpr& x, const MonoidExpr& y);

}  // namespace tmw

#endif  // TMW_FLOW_HPP_
