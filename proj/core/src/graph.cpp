#include "tmw/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace tmw {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    out.push_back(tok);
  }
  return out;
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeDecl> edges) {
  std::unordered_map<std::string_view, Vertex> vindex;
  vertex_names_ = std::move(vertices);
  for (Vertex v = 0; v < vertex_names_.size(); ++v) {
    if (vertex_names_[v].empty()) {
      throw Error("empty vertex identifier");
    }
    if (!vindex.emplace(vertex_names_[v], v).second) {
      throw Error("duplicate vertex identifier '" + vertex_names_[v] + "'");
    }
  }
  std::unordered_map<std::string_view, Edge> eindex;
  edges_.reserve(edges.size());
  for (auto& d : edges) {
    auto s = vindex.find(d.source);
    if (s == vindex.end()) {
      throw Error("edge '" + d.id + "' references undeclared vertex '" + d.source + "'");
    }
    auto r = vindex.find(d.range);
    if (r == vindex.end()) {
      throw Error("edge '" + d.id + "' references undeclared vertex '" + d.range + "'");
    }
    edges_.push_back(EdgeRec{std::move(d.id), s->second, r->second});
    if (edges_.back().name.empty()) {
      throw Error("empty edge identifier");
    }
    if (!eindex.emplace(edges_.back().name, edges_.size() - 1).second) {
      throw Error("duplicate edge identifier '" + edges_.back().name + "'");
    }
  }
  build_indexes();
}

void Graph::build_indexes() {
  const std::size_t n = vertex_names_.size();
  out_.assign(n, {});
  in_.assign(n, {});
  for (Edge e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].source].push_back(e);
    in_[edges_[e].range].push_back(e);
  }
  reach_.assign(n, std::vector<char>(n, 0));
  std::deque<Vertex> queue;
  for (Vertex u = 0; u < n; ++u) {
    auto& seen = reach_[u];
    seen[u] = 1;
    queue.assign(1, u);
    while (!queue.empty()) {
      Vertex w = queue.front();
      queue.pop_front();
      for (Edge e : out_[w]) {
        Vertex t = edges_[e].range;
        if (!seen[t]) {
          seen[t] = 1;
          queue.push_back(t);
        }
      }
    }
  }
}

Graph Graph::parse_text(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::istringstream input{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(input, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    auto toks = split_ws(line);
    if (toks.empty()) {
      continue;
    }
    if (toks[0] == "vertex") {
      if (toks.size() != 2) {
        throw ParseError("expected 'vertex <id>'", lineno);
      }
      vertices.push_back(toks[1]);
    } else if (toks[0] == "edge") {
      if (toks.size() != 4) {
        throw ParseError("expected 'edge <id> <src> <dst>'", lineno);
      }
      edges.push_back(EdgeDecl{toks[1], toks[2], toks[3]});
    } else {
      throw ParseError("unknown directive '" + toks[0] + "'", lineno);
    }
  }
  try {
    return Graph(std::move(vertices), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

Graph Graph::parse_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ParseError("graph JSON must be an object", 0);
  }
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeDecl> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (e.is_array()) {
        if (e.size() != 3) {
          throw ParseError("edge array must be [id, source, range]", 0);
        }
        edges.push_back(EdgeDecl{e[0].get<std::string>(), e[1].get<std::string>(),
                                 e[2].get<std::string>()});
      } else {
        edges.push_back(EdgeDecl{e.at("id").get<std::string>(),
                                 e.at("source").get<std::string>(),
                                 e.at("range").get<std::string>()});
      }
    }
  }
  try {
    return Graph(std::move(vertices), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

Graph Graph::parse_auto(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      continue;
    }
    if (c == '{' || c == '[') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
      }
      return parse_json(j);
    }
    break;
  }
  return parse_text(text);
}

std::string Graph::to_text() const {
  std::ostringstream out;
  for (const auto& name : vertex_names_) {
    out << "vertex " << name << "\n";
  }
  for (const auto& e : edges_) {
    out << "edge " << e.name << " " << vertex_names_[e.source] << " "
        << vertex_names_[e.range] << "\n";
  }
  return out.str();
}

nlohmann::ordered_json Graph::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["vertices"] = vertex_names_;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : edges_) {
    nlohmann::ordered_json je;
    je["id"] = e.name;
    je["source"] = vertex_names_[e.source];
    je["range"] = vertex_names_[e.range];
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

std::optional<Vertex> Graph::find_vertex(std::string_view name) const {
  for (Vertex v = 0; v < vertex_names_.size(); ++v) {
    if (vertex_names_[v] == name) {
      return v;
    }
  }
  return std::nullopt;
}

std::optional<Edge> Graph::find_edge(std::string_view name) const {
  for (Edge e = 0; e < edges_.size(); ++e) {
    if (edges_[e].name == name) {
      return e;
    }
  }
  return std::nullopt;
}

Vertex Graph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) {
    return *v;
  }
  throw Error("unknown vertex '" + std::string(name) + "'");
}

Edge Graph::edge(std::string_view name) const {
  if (auto e = find_edge(name)) {
    return *e;
  }
  throw Error("unknown edge '" + std::string(name) + "'");
}

std::vector<Vertex> Graph::sinks() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (is_sink(v)) {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Vertex> Graph::sources() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (is_source(v)) {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Vertex> Graph::regular_sources() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (is_source(v) && !is_sink(v)) {
      out.push_back(v);
    }
  }
  return out;
}

bool Graph::reaches(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw Error("vertex index out of range");
  }
  return reach_[u][v] != 0;
}

const std::vector<char>& Graph::reachable_set(Vertex u) const {
  if (u >= vertex_count()) {
    throw Error("vertex index out of range");
  }
  return reach_[u];
}

SccInfo strongly_connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  // Iterative Tarjan.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::size_t next_index = 0;
  std::vector<std::vector<Vertex>> components;

  struct Frame {
    Vertex v;
    std::size_t edge_pos;
  };
  std::vector<Frame> call;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnset) {
      continue;
    }
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& fr = call.back();
      Vertex v = fr.v;
      if (fr.edge_pos == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      auto out = g.out_edges(v);
      while (fr.edge_pos < out.size()) {
        Vertex w = g.edge_range(out[fr.edge_pos]);
        ++fr.edge_pos;
        if (index[w] == kUnset) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (descended) {
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Vertex> members;
        for (;;) {
          Vertex w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components.size();
          members.push_back(w);
          if (w == v) {
            break;
          }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
      }
      call.pop_back();
      if (!call.empty()) {
        low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }

  // Tarjan emits components in reverse topological order; flip to topological.
  const std::size_t k = components.size();
  std::reverse(components.begin(), components.end());
  for (auto& c : comp) {
    c = k - 1 - c;
  }

  SccInfo info;
  info.components = std::move(components);
  info.component_of = std::move(comp);
  info.nontrivial.assign(k, 0);
  info.condensation.assign(k, {});
  for (Edge e = 0; e < g.edge_count(); ++e) {
    std::size_t cs = info.component_of[g.edge_source(e)];
    std::size_t cr = info.component_of[g.edge_range(e)];
    if (cs == cr) {
      info.nontrivial[cs] = 1;
    } else {
      info.condensation[cs].push_back(cr);
    }
  }
  for (auto& nbrs : info.condensation) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return info;
}

bool is_strongly_connected(const Graph& g) {
  return strongly_connected_components(g).size() == 1;
}

std::size_t CoveringWindow::vertex_count() const {
  return static_cast<std::size_t>(hi - lo + 1) * base->vertex_count();
}

std::size_t CoveringWindow::edge_count() const {
  return static_cast<std::size_t>(hi - lo) * base->edge_count();
}

std::vector<std::pair<Vertex, int>> CoveringWindow::vertices() const {
  std::vector<std::pair<Vertex, int>> out;
  out.reserve(vertex_count());
  for (int i = lo; i <= hi; ++i) {
    for (Vertex v = 0; v < base->vertex_count(); ++v) {
      out.emplace_back(v, i);
    }
  }
  return out;
}

std::vector<std::pair<Edge, int>> CoveringWindow::edges() const {
  std::vector<std::pair<Edge, int>> out;
  out.reserve(edge_count());
  for (int i = lo; i < hi; ++i) {
    for (Edge e = 0; e < base->edge_count(); ++e) {
      out.emplace_back(e, i);
    }
  }
  return out;
}

CoveringWindow covering_window(const Graph& g, int lo, int hi) {
  if (lo > hi) {
    throw Error("covering window requires lo <= hi");
  }
  return CoveringWindow{&g, lo, hi};
}

}  // namespace tmw
