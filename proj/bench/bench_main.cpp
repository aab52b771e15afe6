// Parallel incremental kernels against the serial full-recompute reference.
//
//   ./build/bench/omv_bench --benchmark_filter=Vitality

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "omv/sir.hpp"
#include "omv/vitality.hpp"

namespace {

using namespace omv;

Graph random_graph(std::size_t n, double avg_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto m = static_cast<std::size_t>(avg_degree * static_cast<double>(n) / 2.0);
  for (std::size_t i = 0; i < m; ++i)
    edges.emplace_back(static_cast<NodeId>(rng() % n), static_cast<NodeId>(rng() % n));
  return Graph::from_edges(std::move(labels), edges);
}

Cover random_cover(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<CommunityId>> m(n);
  for (std::size_t v = 0; v < n; ++v) {
    m[v].push_back(static_cast<CommunityId>(v < k ? v : rng() % k));
    if (rng() % 4 == 0) m[v].push_back(static_cast<CommunityId>(rng() % k));
  }
  return Cover::from_memberships(std::move(m));
}

void BM_VitalityIncremental(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  Graph g = random_graph(n, 12.0, 1);
  Cover c = random_cover(n, n / 20 + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(overlapping_modularity_vitality(g, c, threads));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_VitalityIncremental)
    ->ArgsProduct({{200, 2000, 20000}, {1, 0}})
    ->ArgNames({"n", "threads"})
    ->Unit(benchmark::kMillisecond);

void BM_VitalityReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Graph g = random_graph(n, 12.0, 1);
  Cover c = random_cover(n, n / 20 + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::overlapping_modularity_vitality(g, c));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_VitalityReference)->Arg(200)->Arg(2000)->ArgName("n")->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  Graph g = random_graph(2000, 8.0, 3);
  Cover c = random_cover(2000, 100, 4);
  std::vector<SweepMeasure> measures;
  auto omv = overlapping_modularity_vitality(g, c);
  for (auto st : {Strategy::PositiveFirst, Strategy::NegativeFirst, Strategy::Absolute})
    measures.push_back({omv, st});
  auto grid = make_grid(0.01, 0.10, 0.01);
  SirParams p{0.1, 1.0, 100, 7};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, measures, degree_scores(g), grid, p, threads));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->ArgName("threads")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
