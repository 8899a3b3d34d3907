#ifndef TMW_CLASSIFY_HPP_
#define TMW_CLASSIFY_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmw/expr.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"

namespace tmw {

/// gcd of the lengths of all closed paths based at v; 0 when v lies on no
/// closed path. Computed as the gcd over edges inside v's strongly connected
/// component of depth(u) + 1 - depth(w) for a BFS rooted at v.
unsigned period_of_vertex(const Graph& g, Vertex v);

/// Common vertex period of a strongly connected graph with at least one
/// edge. Recomputes every vertex period and asserts they agree.
unsigned period_of_graph(const Graph& g);

struct Decomposition {
  unsigned d = 0;
  std::vector<std::vector<Vertex>> residue_classes;  // d nonempty classes
  std::vector<MonoidExpr> ideal_representatives;     // v(0) ... v(d-1)
};

/// Residue-class decomposition for a finite strongly connected graph with no
/// sources: class i holds the vertices whose path-distance offsets from the
/// base are congruent to i mod d.
Decomposition decompose(const Graph& g, Vertex base);

/// Monoid-side spot check of the decomposition on a bounded window of
/// covering-graph generators: no generator w(j) may be certified (leq yes)
/// to lie in [base] and in a shifted copy of it. Supporting evidence only;
/// the graph-side computation is exact.
struct WindowCheck {
  std::size_t generators_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

WindowCheck decompose_window_check(const Graph& g, Vertex base,
                                   const Decomposition& dec, int window_hi,
                                   std::size_t cap);

/// Every cycle has an exit, i.e. some vertex on it has out-degree >= 2.
bool condition_l(const Graph& g);

enum class CycleKind {
  SingleCycleNoExit,        // bare cycle, terminal component
  Extreme,                  // terminal component with an edge beyond a bare cycle
  SingleCycleNoReturnExit,  // bare cycle, non-terminal (no exit can return)
  MixedNonTerminal,         // non-terminal component that is not a bare cycle
};

const char* to_string(CycleKind k);

struct CycleClass {
  CycleKind kind;
  std::vector<Vertex> members;       // declaration order
  std::vector<Edge> witness_cycle;   // edge list of a cycle inside the component
};

struct CycleTaxonomy {
  std::vector<CycleClass> classes;  // one per nontrivial component, topological order
};

CycleTaxonomy classify_cycles(const Graph& g);

/// Vertices whose entire downstream has no bifurcations and no cycles.
std::vector<Vertex> line_points(const Graph& g);

struct PrimaryColours {
  std::vector<Vertex> p_l;   // line points
  std::vector<Vertex> p_c;   // vertices on cycles without exits
  std::vector<Vertex> p_ec;  // vertices on extreme cycles
  std::vector<std::vector<Vertex>> gamma_l;   // ~-classes inside P_l
  std::vector<std::vector<Vertex>> gamma_c;   // ~-classes inside P_c
  std::vector<std::vector<Vertex>> gamma_ec;  // ~-classes inside P_ec
};

/// The three hereditary colour sets and the flow-to-a-common-vertex
/// equivalence classes within their union.
PrimaryColours primary_colours(const Graph& g);

bool is_hereditary(const Graph& g, const std::vector<Vertex>& h);
bool is_cofinal(const Graph& g, const std::vector<Vertex>& h);
/// Hereditary and cofinal, which certifies essentiality of the generated
/// Z-order ideal.
bool essential_check(const Graph& g, const std::vector<Vertex>& h);

inline constexpr std::size_t kGroupCheckDefaultCap = 20000;

struct GroupCheckResult {
  Tri verdict;           // is M_E minus zero a group?
  bool graph_criterion;  // strongly connected and Condition (L)
  bool agrees() const {
    return verdict.is_unknown() || verdict.is_yes() == graph_criterion;
  }
};

/// Monoid-side group test for a finite graph with no sources: every ordered
/// pair of vertex generators must be comparable and every generator must
/// absorb doubling (2u <= u); together these bound arbitrary elements, so
/// they decide whether M_E minus zero is a group. Cross-checked against the
/// graph criterion.
GroupCheckResult group_check_graph_monoid(const Graph& g,
                                          std::size_t cap = kGroupCheckDefaultCap);

/// Iterated removal of regular sources until none remain.
Graph strongly_connected_component(const Graph& g);

struct PisResult {
  bool pis = false;
  std::optional<unsigned> d;  // period of the strongly connected component
};

/// Purely-infinite-simple test: Condition (L), a cycle exists, and every
/// vertex reaches every cycle; when it holds, d is the period of the
/// strongly connected component.
PisResult classify_pis(const Graph& g);

struct ClassificationReport {
  bool strongly_connected = false;
  std::optional<unsigned> period;  // present when strongly connected
  bool condition_l = false;
  CycleTaxonomy taxonomy;
  PrimaryColours colours;
  PisResult pis;
};

ClassificationReport classify(const Graph& g);
nlohmann::ordered_json to_json(const Graph& g, const ClassificationReport& r);

}  // namespace tmw

#endif  // TMW_CLASSIFY_HPP_
