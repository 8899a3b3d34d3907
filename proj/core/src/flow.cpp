#include "tmw/flow.hpp"

#include <algorithm>
#include <sstream>

namespace tmw {

namespace {
constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

FlowContext::FlowContext(const Graph& g) : g_(&g) {
  slot_.assign(g.vertex_count(), kNoSlot);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_sink(v)) {
      slot_[v] = nonsink_.size();
      nonsink_.push_back(v);
    }
  }
  live_arrows_.resize(nonsink_.size());
  sink_arrows_.resize(nonsink_.size());
  for (std::size_t s = 0; s < nonsink_.size(); ++s) {
    std::map<std::size_t, std::uint64_t> live;
    std::map<Vertex, std::uint64_t> sink;
    for (Edge e : g.out_edges(nonsink_[s])) {
      Vertex t = g.edge_range(e);
      if (slot_[t] == kNoSlot) {
        ++sink[t];
      } else {
        ++live[slot_[t]];
      }
    }
    for (auto [slot, count] : live) {
      live_arrows_[s].push_back(Arrow{slot, count});
    }
    for (auto [v, count] : sink) {
      sink_arrows_[s].push_back(SinkArrow{v, count});
    }
  }
}

std::optional<std::size_t> FlowContext::slot_of(Vertex v) const {
  if (v >= slot_.size() || slot_[v] == kNoSlot) {
    return std::nullopt;
  }
  return slot_[v];
}

void FlowContext::advance(FlowState& s) const {
  std::vector<Mult> next(nonsink_.size(), Mult(0));
  const int target = s.frontier + 1;
  for (std::size_t slot = 0; slot < nonsink_.size(); ++slot) {
    const Mult& amount = s.live[slot];
    if (amount == 0) {
      continue;
    }
    for (const Arrow& a : live_arrows_[slot]) {
      next[a.slot] += amount * a.count;
    }
    for (const SinkArrow& a : sink_arrows_[slot]) {
      s.deposits[TermKey{a.sink, target}] += amount * a.count;
    }
  }
  s.live = std::move(next);
  s.frontier = target;
}

FlowState FlowContext::normal_form(const MonoidExpr& x, int frontier) const {
  FlowState state;
  state.live.assign(nonsink_.size(), Mult(0));
  state.frontier = frontier;
  if (x.is_zero()) {
    return state;
  }
  if (frontier < x.max_level()) {
    throw Error("frontier " + std::to_string(frontier) +
                " is below the max level " + std::to_string(x.max_level()));
  }
  // Terms are keyed by (vertex, level); bucket them by level first.
  std::map<int, std::vector<std::pair<Vertex, const Mult*>>> by_level;
  for (const auto& [key, mult] : x.terms()) {
    by_level[key.level].emplace_back(key.vertex, &mult);
  }
  state.frontier = x.min_level();
  for (;;) {
    if (auto it = by_level.find(state.frontier); it != by_level.end()) {
      for (const auto& [v, mult] : it->second) {
        if (slot_[v] == kNoSlot) {
          state.deposits[TermKey{v, state.frontier}] += *mult;
        } else {
          state.live[slot_[v]] += *mult;
        }
      }
    }
    if (state.frontier == frontier) {
      break;
    }
    advance(state);
  }
  return state;
}

MonoidExpr FlowContext::to_expr(const FlowState& s) const {
  MonoidExpr x;
  for (std::size_t slot = 0; slot < nonsink_.size(); ++slot) {
    if (s.live[slot] != 0) {
      x.add(nonsink_[slot], s.frontier, s.live[slot]);
    }
  }
  for (const auto& [key, mult] : s.deposits) {
    x.add(key.vertex, key.level, mult);
  }
  return x;
}

FlowState normal_form(const Graph& g, const MonoidExpr& x, int frontier) {
  return FlowContext(g).normal_form(x, frontier);
}

namespace {

int common_frontier(const MonoidExpr& x, const MonoidExpr& y) {
  if (x.is_zero()) {
    return y.max_level();
  }
  if (y.is_zero()) {
    return x.max_level();
  }
  return std::max(x.max_level(), y.max_level());
}

// Deposits of x that strictly exceed the matching deposit of y are permanent.
// Returns the offending key if any.
std::optional<TermKey> deposit_violation(const FlowState& x, const FlowState& y) {
  for (const auto& [key, mult] : x.deposits) {
    auto it = y.deposits.find(key);
    const Mult& other = it == y.deposits.end() ? Mult(0) : it->second;
    if (mult > other) {
      return key;
    }
  }
  return std::nullopt;
}

bool live_below(const FlowState& x, const FlowState& y) {
  for (std::size_t i = 0; i < x.live.size(); ++i) {
    if (x.live[i] > y.live[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool eq_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y) {
  if (x.is_zero() || y.is_zero()) {
    // Conical: only zero equals zero.
    return x.is_zero() && y.is_zero();
  }
  const int base = common_frontier(x, y);
  FlowState sx = ctx.normal_form(x, base);
  FlowState sy = ctx.normal_form(y, base);
  const std::size_t bound = ctx.nonsink_count();
  for (std::size_t step = 0;; ++step) {
    if (sx.deposits != sy.deposits) {
      return false;
    }
    if (sx.live == sy.live) {
      return true;
    }
    if (step == bound) {
      return false;
    }
    ctx.advance(sx);
    ctx.advance(sy);
  }
}

bool eq_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y) {
  return eq_talented(FlowContext(g), x, y);
}

Tri leq_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y,
                 std::size_t cap) {
  if (cap < 1) {
    throw Error("leq requires cap >= 1");
  }
  if (x.is_zero()) {
    return Tri::yes("zero is below every element");
  }
  if (y.is_zero()) {
    return Tri::no("conical: only zero lies below zero");
  }
  const Graph& g = ctx.graph();
  const int base = common_frontier(x, y);
  FlowState sx = ctx.normal_form(x, base);
  FlowState sy = ctx.normal_form(y, base);
  for (std::size_t step = 0;; ++step) {
    if (auto key = deposit_violation(sx, sy)) {
      std::ostringstream cert;
      cert << "deposit violation at " << g.vertex_name(key->vertex) << "("
           << key->level << ")";
      return Tri::no(cert.str());
    }
    if (live_below(sx, sy)) {
      return Tri::yes("pointwise dominance at frontier " +
                      std::to_string(sx.frontier));
    }
    if (step == cap) {
      return Tri::unknown("cap exhausted after " + std::to_string(cap) +
                          " steps past level " + std::to_string(base));
    }
    ctx.advance(sx);
    ctx.advance(sy);
  }
}

Tri leq_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                 std::size_t cap) {
  return leq_talented(FlowContext(g), x, y, cap);
}

Tri lt_talented(const FlowContext& ctx, const MonoidExpr& x, const MonoidExpr& y,
                std::size_t cap) {
  if (eq_talented(ctx, x, y)) {
    return Tri::no("elements are equal");
  }
  Tri le = leq_talented(ctx, x, y, cap);
  if (le.is_yes()) {
    return Tri::yes("strictly below: " + le.certificate);
  }
  return le;
}

Tri lt_talented(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                std::size_t cap) {
  return lt_talented(FlowContext(g), x, y, cap);
}

std::size_t default_leq_cap(const Graph& g, const MonoidExpr& x, const MonoidExpr& y) {
  std::size_t span = 0;
  int lo = 0;
  int hi = 0;
  bool seen = false;
  for (const MonoidExpr* e : {&x, &y}) {
    if (e->is_zero()) {
      continue;
    }
    lo = seen ? std::min(lo, e->min_level()) : e->min_level();
    hi = seen ? std::max(hi, e->max_level()) : e->max_level();
    seen = true;
  }
  if (seen) {
    span = static_cast<std::size_t>(hi - lo);
  }
  return g.vertex_count() * g.vertex_count() + span + 1;
}

}  // namespace tmw
