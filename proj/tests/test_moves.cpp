#include <catch_amalgamated.hpp>

#include "support/graphs.hpp"
#include "support/random_graphs.hpp"
#include "tmw/classify.hpp"
#include "tmw/graph_monoid.hpp"
#include "tmw/moves.hpp"

using namespace tmw;
using namespace tmw::testsupport;

namespace {

InSplitPlan random_in_plan(Rng& rng, const Graph& g) {
  InSplitPlan plan;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto in = g.in_edges(v);
    if (!in.empty()) {
      plan.blocks[v] = random_partition(rng, {in.begin(), in.end()});
    }
  }
  return plan;
}

OutSplitPlan random_out_plan(Rng& rng, const Graph& g) {
  OutSplitPlan plan;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto out = g.out_edges(v);
    if (!out.empty()) {
      plan.blocks[v] = random_partition(rng, {out.begin(), out.end()});
    }
  }
  return plan;
}

// Renames every vertex and edge of `g` the way a trivial one-block split
// does, for structural comparison.
std::string renamed_text(const Graph& g, char sep, bool in_split) {
  std::string text;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    bool unsplit = in_split ? g.is_source(v) : g.is_sink(v);
    text += "vertex " + g.vertex_name(v) + (unsplit ? "" : std::string(1, sep) + "1") +
            "\n";
  }
  auto vname = [&](Vertex v) {
    bool unsplit = in_split ? g.is_source(v) : g.is_sink(v);
    return g.vertex_name(v) + (unsplit ? "" : std::string(1, sep) + "1");
  };
  for (Edge e = 0; e < g.edge_count(); ++e) {
    bool unsplit = in_split ? g.is_source(g.edge_source(e))
                            : g.is_sink(g.edge_range(e));
    text += "edge " + g.edge_name(e) + (unsplit ? "" : std::string(1, sep) + "1") +
            " " + vname(g.edge_source(e)) + " " + vname(g.edge_range(e)) + "\n";
  }
  return text;
}

}  // namespace

TEST_CASE("move S removes a regular source") {
  Graph p = path_graph(3);
  Graph smaller = move_source_removal(p, p.vertex("p0"));
  REQUIRE(smaller.vertex_count() == 2);
  REQUIRE(smaller.edge_count() == 1);

  Graph g = Graph::parse_text(
      "vertex u\nvertex a\nvertex b\n"
      "edge s u a\nedge e a b\nedge f b a\nedge g b b\n");
  REQUIRE(move_source_removal(g, g.vertex("u")).to_text() == intro_e().to_text());

  REQUIRE_THROWS_AS(move_source_removal(p, p.vertex("p2")), Error);  // a sink
  REQUIRE_THROWS_AS(move_source_removal(p, p.vertex("p1")), Error);
}

TEST_CASE("move I constructs the in-split") {
  SECTION("the sink-join counterexample shape") {
    Graph e = sink_join();
    InSplitPlan plan;
    plan.blocks[e.vertex("c")] = {{e.edge("ea")}, {e.edge("eb")}};
    Graph f = move_in_split(e, plan);
    REQUIRE(f.vertex_count() == 4);
    REQUIRE(f.edge_count() == 2);
    REQUIRE(f.find_vertex("c.1").has_value());
    REQUIRE(f.find_vertex("c.2").has_value());
    REQUIRE(f.edge_range(f.edge("ea")) == f.vertex("c.1"));
    REQUIRE(f.edge_range(f.edge("eb")) == f.vertex("c.2"));
  }
  SECTION("rose split into singles") {
    Graph r2 = rose(2);
    InSplitPlan plan;
    plan.blocks[0] = {{r2.edge("e0")}, {r2.edge("e1")}};
    Graph f = move_in_split(r2, plan);
    REQUIRE(f.vertex_count() == 2);
    REQUIRE(f.edge_count() == 4);
    // e0 lands on v.1 from both copies, e1 on v.2 from both copies.
    REQUIRE(f.edge_range(f.edge("e0.1")) == f.vertex("v.1"));
    REQUIRE(f.edge_range(f.edge("e0.2")) == f.vertex("v.1"));
    REQUIRE(f.edge_source(f.edge("e0.2")) == f.vertex("v.2"));
    REQUIRE(f.edge_range(f.edge("e1.1")) == f.vertex("v.2"));
  }
  SECTION("trivial plans rename only") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
      Graph g = random_graph(rng, 1 + trial % 5);
      Graph f = move_in_split(g, InSplitPlan{});
      REQUIRE(f.to_text() == renamed_text(g, '.', true));
    }
  }
  SECTION("invalid partitions are rejected") {
    Graph e = sink_join();
    InSplitPlan missing_edge;
    missing_edge.blocks[e.vertex("c")] = {{e.edge("ea")}};
    REQUIRE_THROWS_AS(move_in_split(e, missing_edge), Error);

    InSplitPlan wrong_side;
    wrong_side.blocks[e.vertex("a")] = {{e.edge("ea")}};
    REQUIRE_THROWS_AS(move_in_split(e, wrong_side), Error);

    InSplitPlan empty_block;
    empty_block.blocks[e.vertex("c")] = {{e.edge("ea"), e.edge("eb")}, {}};
    REQUIRE_THROWS_AS(move_in_split(e, empty_block), Error);
  }
}

TEST_CASE("move O constructs the out-split") {
  SECTION("rose split into singles") {
    Graph r2 = rose(2);
    OutSplitPlan plan;
    plan.blocks[0] = {{r2.edge("e0")}, {r2.edge("e1")}};
    Graph f = move_out_split(r2, plan);
    REQUIRE(f.vertex_count() == 2);
    REQUIRE(f.edge_count() == 4);
    REQUIRE(f.edge_source(f.edge("e0^1")) == f.vertex("v^1"));
    REQUIRE(f.edge_range(f.edge("e0^1")) == f.vertex("v^1"));
    REQUIRE(f.edge_range(f.edge("e0^2")) == f.vertex("v^2"));
    REQUIRE(f.edge_source(f.edge("e1^1")) == f.vertex("v^2"));
  }
  SECTION("sinks stay unsplit") {
    Graph p = path_graph(2);
    Graph f = move_out_split(p, OutSplitPlan{});
    REQUIRE(f.find_vertex("p0^1").has_value());
    REQUIRE(f.find_vertex("p1").has_value());
    REQUIRE(f.edge_count() == 1);
  }
  SECTION("trivial plans rename only") {
    Rng rng(809);
    for (int trial = 0; trial < 20; ++trial) {
      Graph g = random_graph(rng, 1 + trial % 5);
      Graph f = move_out_split(g, OutSplitPlan{});
      REQUIRE(f.to_text() == renamed_text(g, '^', false));
    }
  }
}

TEST_CASE("induced maps take the stated form") {
  SECTION("out-split of the rose sends v to the sum of copies") {
    Graph r2 = rose(2);
    OutSplitPlan plan;
    plan.blocks[0] = {{r2.edge("e0")}, {r2.edge("e1")}};
    Graph f = move_out_split(r2, plan);
    MapPair maps = induced_map_out_split(r2, f, plan);
    REQUIRE(maps.forward.image[0] == MonoidExpr::parse(f, "v^1 + v^2"));
  }
  SECTION("in-split picks the first copy") {
    Graph f0 = intro_f();
    InSplitPlan plan = InSplitPlan{};
    Graph f = move_in_split(f0, plan);
    MapPair maps = induced_map_in_split(f0, f, plan);
    for (Vertex v = 0; v < f0.vertex_count(); ++v) {
      REQUIRE(maps.forward.image[v] ==
              MonoidExpr::generator(f.vertex(f0.vertex_name(v) + ".1")));
    }
  }
  SECTION("source removal is the inclusion") {
    Graph g = Graph::parse_text(
        "vertex u\nvertex a\nvertex b\n"
        "edge s u a\nedge e a b\nedge f b a\nedge g b b\n");
    Graph f = move_source_removal(g, g.vertex("u"));
    MapPair maps = induced_map_source_removal(g, f, g.vertex("u"));
    for (Vertex v = 0; v < f.vertex_count(); ++v) {
      REQUIRE(maps.forward.image[v] ==
              MonoidExpr::generator(g.vertex(f.vertex_name(v))));
    }
    // The removed source expands as the shifted sum of its edge ranges.
    REQUIRE(maps.inverse.image[g.vertex("u")] ==
            MonoidExpr::generator(f.vertex("a"), 1));
  }
}

TEST_CASE("verified moves") {
  Rng rng(810);
  SECTION("random out-splits verify") {
    for (int trial = 0; trial < 25; ++trial) {
      Graph g = random_sink_free_graph(rng, 1 + trial % 5);
      OutSplitPlan plan = random_out_plan(rng, g);
      Graph f = move_out_split(g, plan);
      MapPair maps = induced_map_out_split(g, f, plan);
      auto [lo, hi] = default_verify_window(g);
      VerifyMapResult r = verify_map(maps, lo, hi);
      REQUIRE(r.well_defined.is_yes());
      REQUIRE(r.inverse_ok.is_yes());
    }
  }
  SECTION("random in-splits of sink-free graphs verify") {
    for (int trial = 0; trial < 25; ++trial) {
      Graph g = random_sink_free_graph(rng, 1 + trial % 5);
      InSplitPlan plan = random_in_plan(rng, g);
      Graph f = move_in_split(g, plan);
      MapPair maps = induced_map_in_split(g, f, plan);
      auto [lo, hi] = default_verify_window(g);
      VerifyMapResult r = verify_map(maps, lo, hi);
      REQUIRE(r.well_defined.is_yes());
      REQUIRE(r.inverse_ok.is_yes());
    }
  }
  SECTION("random source removals verify") {
    for (int trial = 0; trial < 25; ++trial) {
      Graph base = random_sink_free_graph(rng, 1 + trial % 4);
      // Append a fresh regular source feeding random vertices.
      std::string text = base.to_text() + "vertex fresh\n";
      std::uniform_int_distribution<std::size_t> pick(0, base.vertex_count() - 1);
      int fan = 1 + trial % 3;
      for (int i = 0; i < fan; ++i) {
        text += "edge fresh" + std::to_string(i) + " fresh " +
                base.vertex_name(pick(rng)) + "\n";
      }
      Graph g = Graph::parse_text(text);
      Graph f = move_source_removal(g, g.vertex("fresh"));
      MapPair maps = induced_map_source_removal(g, f, g.vertex("fresh"));
      auto [lo, hi] = default_verify_window(f);
      VerifyMapResult r = verify_map(maps, lo, hi);
      REQUIRE(r.well_defined.is_yes());
      REQUIRE(r.inverse_ok.is_yes());
    }
  }
  SECTION("the sink counterexample is detected") {
    Graph e = sink_join();
    InSplitPlan plan;
    plan.blocks[e.vertex("c")] = {{e.edge("ea")}, {e.edge("eb")}};
    Graph f = move_in_split(e, plan);
    MapPair maps = induced_map_in_split(e, f, plan);
    VerifyMapResult r = verify_map(maps, 0, 4);
    REQUIRE(r.well_defined.is_no());
    REQUIRE(r.inverse_ok.is_no());
    // The failure shows up in the graph monoids: a = b collapses in M_E but
    // the images stay apart in M_F.
    REQUIRE(eq_graph_monoid(e, MonoidExpr::generator(e.vertex("a")),
                            MonoidExpr::generator(e.vertex("b")))
                .is_yes());
    MonoidExpr fa = maps.forward.apply(MonoidExpr::generator(e.vertex("a")));
    MonoidExpr fb = maps.forward.apply(MonoidExpr::generator(e.vertex("b")));
    REQUIRE(eq_graph_monoid(f, fa, fb).is_no());
  }
  SECTION("in-split copies are equal in the split graph") {
    Rng rng2(811);
    for (int trial = 0; trial < 15; ++trial) {
      Graph g = random_sink_free_graph(rng2, 1 + trial % 4);
      InSplitPlan plan = random_in_plan(rng2, g);
      Graph f = move_in_split(g, plan);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto it = plan.blocks.find(v);
        std::size_t m = it == plan.blocks.end() ? 1 : it->second.size();
        for (std::size_t i = 2; i <= m; ++i) {
          Vertex vi = f.vertex(g.vertex_name(v) + "." + std::to_string(i));
          Vertex v1 = f.vertex(g.vertex_name(v) + ".1");
          REQUIRE(eq_talented(f, MonoidExpr::generator(v1),
                              MonoidExpr::generator(vi)));
        }
      }
    }
  }
  SECTION("verified moves preserve the period") {
    Rng rng3(812);
    for (int trial = 0; trial < 15; ++trial) {
      Graph g = random_strongly_connected(rng3, 5);
      Graph f;
      MapPair maps;
      if (trial % 2 == 0) {
        OutSplitPlan plan = random_out_plan(rng3, g);
        f = move_out_split(g, plan);
        maps = induced_map_out_split(g, f, plan);
      } else {
        InSplitPlan plan = random_in_plan(rng3, g);
        f = move_in_split(g, plan);
        maps = induced_map_in_split(g, f, plan);
      }
      auto [lo, hi] = default_verify_window(g);
      VerifyMapResult r = verify_map(maps, lo, hi);
      REQUIRE(r.well_defined.is_yes());
      REQUIRE(r.inverse_ok.is_yes());
      REQUIRE(period_of_graph(g) ==
              period_of_graph(strongly_connected_component(f)));
    }
  }
}

TEST_CASE("plan JSON") {
  Graph e = sink_join();
  auto j = nlohmann::json::parse(
      R"([{"vertex": "c", "blocks": [["ea"], ["eb"]]}])");
  InSplitPlan plan = InSplitPlan::from_json(e, j);
  REQUIRE(plan.blocks.at(e.vertex("c")).size() == 2);

  auto wrapped = nlohmann::json::parse(
      R"({"schema": 1, "plans": [{"vertex": "c", "blocks": [["ea", "eb"]]}]})");
  REQUIRE(InSplitPlan::from_json(e, wrapped).blocks.at(e.vertex("c")).size() == 1);

  REQUIRE_THROWS_AS(
      InSplitPlan::from_json(
          e, nlohmann::json::parse(R"([{"vertex": "zzz", "blocks": []}])")),
      Error);
}
