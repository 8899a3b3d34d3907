#ifndef TMW_GRAPH_HPP_
#define TMW_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tmw {

using Vertex = std::size_t;
using Edge   = std::size_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure carrying a 1-based line number (0 when not line-oriented).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A finite directed multigraph with named vertices and edges.
///
/// Identifiers are arbitrary strings; the canonical order of vertices and
/// edges is declaration order. Parallel edges and loops are permitted, and
/// edge identity is first-class (split plans partition edge sets). The graph
/// is immutable after construction, so all queries are safe to run from
/// concurrent tasks.
class Graph {
 public:
  struct EdgeDecl {
    std::string id;
    std::string source;
    std::string range;
  };

  Graph() = default;
  Graph(std::vector<std::string> vertices, std::vector<EdgeDecl> edges);

  /// Line format: `vertex <id>`, `edge <id> <src> <dst>`, `#` comments.
  static Graph parse_text(std::string_view text);
  static Graph parse_json(const nlohmann::json& j);
  /// Dispatches on the first non-space character ('{' or '[' means JSON).
  static Graph parse_auto(std::string_view text);

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(Vertex v) const { return vertex_names_[v]; }
  const std::string& edge_name(Edge e) const { return edges_[e].name; }
  Vertex edge_source(Edge e) const { return edges_[e].source; }
  Vertex edge_range(Edge e) const { return edges_[e].range; }

  std::optional<Vertex> find_vertex(std::string_view name) const;
  std::optional<Edge> find_edge(std::string_view name) const;
  /// Throws Error when the vertex is not declared.
  Vertex vertex(std::string_view name) const;
  Edge edge(std::string_view name) const;

  std::span<const Edge> out_edges(Vertex v) const { return out_[v]; }
  std::span<const Edge> in_edges(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  bool is_sink(Vertex v) const { return out_[v].empty(); }
  bool is_source(Vertex v) const { return in_[v].empty(); }

  std::vector<Vertex> sinks() const;
  std::vector<Vertex> sources() const;
  /// Sources that are not also sinks.
  std::vector<Vertex> regular_sources() const;

  /// Reflexive reachability: u = v or a finite path u -> v exists.
  bool reaches(Vertex u, Vertex v) const;
  /// Characteristic vector of the set of vertices reachable from u.
  const std::vector<char>& reachable_set(Vertex u) const;

 private:
  struct EdgeRec {
    std::string name;
    Vertex source;
    Vertex range;
  };

  void build_indexes();

  std::vector<std::string> vertex_names_;
  std::vector<EdgeRec> edges_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
  std::vector<std::vector<char>> reach_;  // computed eagerly; graph is immutable
};

/// Strongly connected components with the condensation DAG.
struct SccInfo {
  std::vector<std::size_t> component_of;        // vertex -> component index
  std::vector<std::vector<Vertex>> components;  // topological order, members in declaration order
  std::vector<char> nontrivial;                 // component contains an edge
  std::vector<std::vector<std::size_t>> condensation;  // deduplicated out-neighbours

  std::size_t size() const { return components.size(); }
  bool is_terminal(std::size_t c) const { return condensation[c].empty(); }
};

SccInfo strongly_connected_components(const Graph& g);

/// Whole graph is one strongly connected component.
bool is_strongly_connected(const Graph& g);

/// The finite window [lo, hi] of the covering graph: vertices (v, i) and
/// edges (e, i) with s(e, i) = (s(e), i) and r(e, i) = (r(e), i + 1).
struct CoveringWindow {
  const Graph* base;
  int lo;
  int hi;

  std::size_t vertex_count() const;
  std::size_t edge_count() const;
  std::vector<std::pair<Vertex, int>> vertices() const;
  std::vector<std::pair<Edge, int>> edges() const;
};

CoveringWindow covering_window(const Graph& g, int lo, int hi);

}  // namespace tmw

#endif  // TMW_GRAPH_HPP_
