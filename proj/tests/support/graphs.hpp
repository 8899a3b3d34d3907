#ifndef TMW_TESTS_GRAPHS_HPP_
#define TMW_TESTS_GRAPHS_HPP_

#include <string>

#include "tmw/graph.hpp"

namespace tmw::testsupport {

inline Graph from_text(const std::string& text) { return Graph::parse_text(text); }

// a <-> b with a loop at b; strongly connected of period 1.
inline Graph intro_e() {
  return from_text(
      "vertex a\nvertex b\n"
      "edge e a b\nedge f b a\nedge g b b\n");
}

// u1 <-> u2 <-> u3; strongly connected of period 2.
inline Graph intro_f() {
  return from_text(
      "vertex u1\nvertex u2\nvertex u3\n"
      "edge e1 u1 u2\nedge e2 u2 u1\nedge e3 u2 u3\nedge e4 u3 u2\n");
}

// Loop <- v2 <-> v3 -> loop: two cycles without exits and a 2-cycle whose
// exits never return.
inline Graph intro_g() {
  return from_text(
      "vertex v1\nvertex v2\nvertex v3\nvertex v4\n"
      "edge l1 v1 v1\nedge a v2 v1\nedge b v2 v3\nedge c v3 v2\n"
      "edge d v3 v4\nedge l4 v4 v4\n");
}

// Rose with k petals at a single vertex v.
inline Graph rose(int k) {
  std::string text = "vertex v\n";
  for (int i = 0; i < k; ++i) {
    text += "edge e" + std::to_string(i) + " v v\n";
  }
  return from_text(text);
}

// Bare cycle c0 -> c1 -> ... -> c0.
inline Graph cycle_graph(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    text += "vertex c" + std::to_string(i) + "\n";
  }
  for (int i = 0; i < n; ++i) {
    text += "edge e" + std::to_string(i) + " c" + std::to_string(i) + " c" +
            std::to_string((i + 1) % n) + "\n";
  }
  return from_text(text);
}

// Path p0 -> p1 -> ... -> p(n-1).
inline Graph path_graph(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    text += "vertex p" + std::to_string(i) + "\n";
  }
  for (int i = 0; i + 1 < n; ++i) {
    text += "edge e" + std::to_string(i) + " p" + std::to_string(i) + " p" +
            std::to_string(i + 1) + "\n";
  }
  return from_text(text);
}

// u -> v, u -> w with v, w sinks: u != u(2) + u(2) here.
inline Graph fork_sinks() {
  return from_text(
      "vertex u\nvertex v\nvertex w\n"
      "edge e u v\nedge f u w\n");
}

// Same fork with returns v -> u, w -> u: u = u(2) + u(2) here.
inline Graph fork_returns() {
  return from_text(
      "vertex u\nvertex v\nvertex w\n"
      "edge e u v\nedge f u w\nedge g v u\nedge h w u\n");
}

// a -> c <- b with c a sink: the in-split counterexample domain.
inline Graph sink_join() {
  return from_text(
      "vertex a\nvertex b\nvertex c\n"
      "edge ea a c\nedge eb b c\n");
}

}  // namespace tmw::testsupport

#endif  // TMW_TESTS_GRAPHS_HPP_
