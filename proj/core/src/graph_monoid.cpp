#include "tmw/graph_monoid.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace tmw {

namespace {

using Bag = std::vector<std::uint64_t>;

constexpr std::uint64_t kSaturated = std::uint64_t(1) << 62;
constexpr std::uint64_t kMaxInputCount = std::uint64_t(1) << 32;

// Forgetful homomorphism: sum multiplicities over all levels per vertex.
Bag collapse(const Graph& g, const MonoidExpr& x) {
  Bag bag(g.vertex_count(), 0);
  for (const auto& [key, mult] : x.terms()) {
    Mult total = Mult(bag[key.vertex]) + mult;
    if (total >= Mult(kMaxInputCount)) {
      throw Error("multiplicity too large for a graph-monoid search");
    }
    bag[key.vertex] = total.convert_to<std::uint64_t>();
  }
  return bag;
}

bool bag_zero(const Bag& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t c) { return c == 0; });
}

bool bag_below(const Bag& x, const Bag& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) {
      return false;
    }
  }
  return true;
}

std::uint64_t sat_mul_add(std::uint64_t acc, std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) {
    return kSaturated;
  }
  std::uint64_t prod = a * b;
  if (acc > kSaturated - prod) {
    return kSaturated;
  }
  return acc + prod;
}

// One complete round: every token on a non-sink vertex takes one flow step,
// sink tokens stay put. Saturating, and saturation is sound for >= probes
// because any saturated count exceeds every admissible input count.
Bag complete_round(const Graph& g, const Bag& b) {
  Bag next(b.size(), 0);
  for (Vertex v = 0; v < b.size(); ++v) {
    if (b[v] == 0) {
      continue;
    }
    if (g.is_sink(v)) {
      next[v] = sat_mul_add(next[v], b[v], 1);
      continue;
    }
    for (Edge e : g.out_edges(v)) {
      next[g.edge_range(e)] = sat_mul_add(next[g.edge_range(e)], b[v], 1);
    }
  }
  return next;
}

// Vertices reachable from the support of a bag.
std::vector<char> support_reach(const Graph& g, const Bag& b) {
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v = 0; v < b.size(); ++v) {
    if (b[v] == 0) {
      continue;
    }
    const auto& r = g.reachable_set(v);
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
      if (r[w]) {
        seen[w] = 1;
      }
    }
  }
  return seen;
}

// Largest subset W of the complement of `avoid` such that every non-sink
// vertex of W keeps an out-edge inside W. Token mass on W never decreases
// under flows, so a token starting in W can never be covered by an element
// whose support stays inside `avoid`.
std::vector<char> persistent_complement(const Graph& g, const std::vector<char>& avoid) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    in[v] = avoid[v] ? 0 : 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!in[v] || g.is_sink(v)) {
        continue;
      }
      bool keeps = false;
      for (Edge e : g.out_edges(v)) {
        if (in[g.edge_range(e)]) {
          keeps = true;
          break;
        }
      }
      if (!keeps) {
        in[v] = 0;
        changed = true;
      }
    }
  }
  return in;
}

// Memoized breadth-first exploration of partial flows in F_E.
class BagSearch {
 public:
  BagSearch(const Graph& g, Bag start, bool narrow)
      : g_(g), narrow_(narrow) {
    push(std::move(start));
  }

  bool overflowed() const { return overflowed_; }
  bool exhausted() const { return cursor_ >= frontier_.size(); }
  std::size_t size() const { return frontier_.size(); }
  const std::vector<Bag>& elements() const { return frontier_; }

  // Expands one element; appends the unseen neighbours. Returns the range of
  // newly added element indices.
  std::pair<std::size_t, std::size_t> expand() {
    std::size_t first = frontier_.size();
    const Bag current = frontier_[cursor_++];
    for (Vertex v = 0; v < current.size(); ++v) {
      if (current[v] == 0 || g_.is_sink(v)) {
        continue;
      }
      Bag next = current;
      --next[v];
      for (Edge e : g_.out_edges(v)) {
        ++next[g_.edge_range(e)];
      }
      push(std::move(next));
      if (overflowed_) {
        break;
      }
    }
    return {first, frontier_.size()};
  }

  bool contains(const Bag& b) const { return seen_.count(key(b)) != 0; }

 private:
  std::string key(const Bag& b) const {
    std::string k;
    if (narrow_) {
      k.resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) {
        k[i] = static_cast<char>(b[i]);
      }
    } else {
      k.resize(b.size() * 8);
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t c = b[i];
        for (int byte = 0; byte < 8; ++byte) {
          k[i * 8 + byte] = static_cast<char>(c >> (byte * 8));
        }
      }
    }
    return k;
  }

  void push(Bag b) {
    if (narrow_) {
      for (std::uint64_t c : b) {
        if (c > 255) {
          overflowed_ = true;
          return;
        }
      }
    }
    if (seen_.insert(key(b)).second) {
      frontier_.push_back(std::move(b));
    }
  }

  const Graph& g_;
  bool narrow_;
  bool overflowed_ = false;
  std::vector<Bag> frontier_;
  std::size_t cursor_ = 0;
  std::unordered_set<std::string> seen_;
};

std::string bag_to_string(const Graph& g, const Bag& b) {
  std::ostringstream out;
  bool first = true;
  for (Vertex v = 0; v < b.size(); ++v) {
    if (b[v] == 0) {
      continue;
    }
    if (!first) {
      out << " + ";
    }
    first = false;
    if (b[v] != 1) {
      out << b[v] << "*";
    }
    out << g.vertex_name(v);
  }
  return first ? "0" : out.str();
}

enum class Goal { Meet, Dominate };

// Runs the bidirectional search. For Goal::Meet the sides must produce the
// same element; for Goal::Dominate some y-side element must contain some
// x-side element pointwise.
Tri bag_bfs(const Graph& g, const Bag& bx, const Bag& by, std::size_t cap, Goal goal,
            bool narrow) {
  BagSearch sx(g, bx, narrow);
  BagSearch sy(g, by, narrow);
  if (sx.overflowed() || sy.overflowed()) {
    return Tri::unknown("retry wide");
  }

  auto found = [&](const Bag& witness) {
    return Tri::yes("common flow target " + bag_to_string(g, witness));
  };

  if (goal == Goal::Meet && sx.contains(by)) {
    return found(by);
  }
  if (goal == Goal::Dominate && bag_below(bx, by)) {
    return found(by);
  }

  while (!sx.exhausted() || !sy.exhausted()) {
    if (sx.size() + sy.size() > cap) {
      return Tri::unknown("node budget of " + std::to_string(cap) + " exhausted");
    }
    // Expand the smaller side first.
    bool expand_x = !sx.exhausted() && (sy.exhausted() || sx.size() <= sy.size());
    BagSearch& self = expand_x ? sx : sy;
    BagSearch& other = expand_x ? sy : sx;
    auto [first, last] = self.expand();
    if (self.overflowed() || other.overflowed()) {
      return Tri::unknown("retry wide");
    }
    for (std::size_t i = first; i < last; ++i) {
      const Bag& fresh = self.elements()[i];
      if (goal == Goal::Meet) {
        if (other.contains(fresh)) {
          return found(fresh);
        }
      } else {
        // Domination scan against everything the other side has produced.
        const auto& xs = expand_x ? self.elements() : other.elements();
        const auto& ys = expand_x ? other.elements() : self.elements();
        const Bag& probe = fresh;
        if (expand_x) {
          for (const Bag& c : ys) {
            if (bag_below(probe, c)) {
              return found(c);
            }
          }
        } else {
          for (const Bag& c : xs) {
            if (bag_below(c, probe)) {
              return found(probe);
            }
          }
        }
      }
    }
  }
  std::ostringstream cert;
  cert << "both searches exhausted (" << sx.size() << " and " << sy.size()
       << " elements) without a "
       << (goal == Goal::Meet ? "common element" : "dominating pair");
  return Tri::no(cert.str());
}

Tri bag_bfs_auto(const Graph& g, const Bag& bx, const Bag& by, std::size_t cap,
                 Goal goal) {
  bool narrow = g.vertex_count() <= 15 &&
                std::all_of(bx.begin(), bx.end(), [](auto c) { return c <= 255; }) &&
                std::all_of(by.begin(), by.end(), [](auto c) { return c <= 255; });
  if (narrow) {
    Tri r = bag_bfs(g, bx, by, cap, goal, true);
    if (!(r.is_unknown() && r.certificate == "retry wide")) {
      return r;
    }
  }
  return bag_bfs(g, bx, by, cap, goal, false);
}

}  // namespace

Tri eq_graph_monoid(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                    std::size_t cap) {
  if (cap < 1) {
    throw Error("eq_graph_monoid requires cap >= 1");
  }
  Bag bx = collapse(g, x);
  Bag by = collapse(g, y);
  if (bx == by) {
    return Tri::yes("identical multisets");
  }
  if (bag_zero(bx) || bag_zero(by)) {
    return Tri::no("conical: zero equals only zero");
  }
  return bag_bfs_auto(g, bx, by, cap, Goal::Meet);
}

Tri leq_graph_monoid(const Graph& g, const MonoidExpr& x, const MonoidExpr& y,
                     std::size_t cap) {
  if (cap < 1) {
    throw Error("leq_graph_monoid requires cap >= 1");
  }
  Bag bx = collapse(g, x);
  Bag by = collapse(g, y);
  if (bag_zero(bx)) {
    return Tri::yes("zero is below every element");
  }
  if (bag_zero(by)) {
    return Tri::no("conical: only zero lies below zero");
  }

  // Route 1: probe complete-round flow targets of y for one that contains x.
  // Two closed walks of a common length at a vertex show up within roughly
  // the product of two cycle lengths, hence the quadratic round budget.
  const std::size_t n = g.vertex_count();
  const std::size_t rounds = n * n + 4 * n + 8;
  Bag c = by;
  for (std::size_t k = 0; k <= rounds; ++k) {
    if (bag_below(bx, c)) {
      return Tri::yes("contained in the complete flow of the right side after " +
                      std::to_string(k) + " rounds");
    }
    c = complete_round(g, c);
  }

  // Route 2: a token of x trapped outside everything y can reach.
  std::vector<char> world_x = support_reach(g, bx);
  std::vector<char> world_y = support_reach(g, by);
  std::vector<char> trapped = persistent_complement(g, world_y);
  for (Vertex v = 0; v < bx.size(); ++v) {
    if (bx[v] != 0 && trapped[v]) {
      return Tri::no("token on " + g.vertex_name(v) +
                     " can never be covered by a flow target of the right side");
    }
  }

  // Route 3: conserved component mass. On a component that is a bare cycle
  // or a lone sink, and that no vertex of either side's reachable world
  // enters from outside, every flow step preserves the token count on the
  // component. x <= y then forces the count of x to stay below that of y.
  {
    SccInfo scc = strongly_connected_components(g);
    for (std::size_t comp = 0; comp < scc.size(); ++comp) {
      const auto& members = scc.components[comp];
      bool eligible = true;
      for (Vertex v : members) {
        if (g.is_sink(v)) {
          eligible = members.size() == 1;
          break;
        }
        std::size_t internal = 0;
        for (Edge e : g.out_edges(v)) {
          if (scc.component_of[g.edge_range(e)] == comp) {
            ++internal;
          }
        }
        if (internal != 1) {
          eligible = false;
          break;
        }
      }
      if (!eligible) {
        continue;
      }
      bool entered = false;
      for (Edge e = 0; e < g.edge_count() && !entered; ++e) {
        Vertex s = g.edge_source(e);
        entered = (world_x[s] || world_y[s]) &&
                  scc.component_of[s] != comp &&
                  scc.component_of[g.edge_range(e)] == comp;
      }
      if (entered) {
        continue;
      }
      std::uint64_t mass_x = 0, mass_y = 0;
      for (Vertex v : members) {
        mass_x += bx[v];
        mass_y += by[v];
      }
      if (mass_x > mass_y) {
        std::string names;
        for (Vertex v : members) {
          names += (names.empty() ? "" : ",") + g.vertex_name(v);
        }
        return Tri::no("conserved token count on {" + names + "} is " +
                       std::to_string(mass_x) + " on the left but " +
                       std::to_string(mass_y) + " on the right");
      }
    }
  }

  // Route 4: bidirectional search for a dominating pair.
  return bag_bfs_auto(g, bx, by, cap, Goal::Dominate);
}

}  // namespace tmw
