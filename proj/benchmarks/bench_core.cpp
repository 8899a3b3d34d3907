#include <benchmark/benchmark.h>

#include <random>

#include "tmw/classify.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"
#include "tmw/graph_monoid.hpp"
#include "tmw/moves.hpp"

namespace {

using namespace tmw;

Graph dense_strongly_connected(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) {
    vertices.push_back("v" + std::to_string(i));
  }
  std::vector<Graph::EdgeDecl> edges;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    edges.push_back({"e" + std::to_string(k++), vertices[i], vertices[(i + 1) % n]});
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int t = 0; t < 2 * n; ++t) {
    edges.push_back({"e" + std::to_string(k++), vertices[pick(rng)],
                     vertices[pick(rng)]});
  }
  return Graph(std::move(vertices), std::move(edges));
}

void bm_normal_form(benchmark::State& state) {
  Graph g = dense_strongly_connected(static_cast<int>(state.range(0)), 7);
  FlowContext ctx(g);
  MonoidExpr x = order_unit(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.normal_form(x, 32));
  }
}
BENCHMARK(bm_normal_form)->Arg(4)->Arg(8)->Arg(16);

void bm_eq_talented(benchmark::State& state) {
  Graph g = dense_strongly_connected(static_cast<int>(state.range(0)), 11);
  FlowContext ctx(g);
  MonoidExpr x = order_unit(g);
  MonoidExpr y = MonoidExpr::generator(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eq_talented(ctx, x, y));
  }
}
BENCHMARK(bm_eq_talented)->Arg(4)->Arg(8)->Arg(16);

void bm_scc(benchmark::State& state) {
  Graph g = dense_strongly_connected(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strongly_connected_components(g));
  }
}
BENCHMARK(bm_scc)->Arg(8)->Arg(32)->Arg(128);

void bm_group_check(benchmark::State& state) {
  Graph g = dense_strongly_connected(static_cast<int>(state.range(0)), 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(group_check_graph_monoid(g));
  }
}
BENCHMARK(bm_group_check)->Arg(3)->Arg(4)->Arg(6);

void bm_verify_out_split(benchmark::State& state) {
  Graph g = dense_strongly_connected(static_cast<int>(state.range(0)), 19);
  OutSplitPlan plan;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::vector<Edge>> blocks;
    for (Edge e : g.out_edges(v)) {
      blocks.push_back({e});
    }
    plan.blocks[v] = std::move(blocks);
  }
  Graph f = move_out_split(g, plan);
  MapPair maps = induced_map_out_split(g, f, plan);
  auto [lo, hi] = default_verify_window(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_map(maps, lo, hi));
  }
}
BENCHMARK(bm_verify_out_split)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
