#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "metrik/atb.hpp"
#include "metrik/spaces.hpp"
#include "metrik/sra.hpp"

namespace {

using namespace metrik;

FiniteMetricSpace random_snowflake(std::size_t n, std::uint64_t seed) {
  return snowflake_transform(normed_sample(3, Norm::l2(), n, seed), 0.5);
}

void BM_VerifySra(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_snowflake(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_sra_set(s, SraParameter(0.5)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VerifySra)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_MaxSraExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normed_sample(2, Norm::l2(), n, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_sra_subset(s, SraParameter(0.6), SearchMode::kExact, 64));
  }
}
BENCHMARK(BM_MaxSraExact)->DenseRange(10, 30, 5);

void BM_SelfContractedScan(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto c = heisenberg_axis_curve(steps);
  for (auto _ : state) benchmark::DoNotOptimize(is_self_contracted(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SelfContractedScan)
    ->RangeMultiplier(4)
    ->Range(256, 16384)
    ->Complexity(benchmark::oNSquared);

void BM_LaaksoGraph(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laakso_graph(level));
}
BENCHMARK(BM_LaaksoGraph)->DenseRange(2, 6);

void BM_LaaksoSraPoints(benchmark::State& state) {
  const auto g = laakso_graph(6);
  for (auto _ : state) {
    const auto pts = laakso_sra_points(g, 6);
    benchmark::DoNotOptimize(graph_metric(g.graph, pts.x));
  }
}
BENCHMARK(BM_LaaksoSraPoints);

void BM_CaLemmaFuzz(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(calemma_fuzz(dim, 0.7, 10000, 3));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_CaLemmaFuzz)->DenseRange(2, 4);

void BM_AngleSeparated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normed_sample(2, Norm::l2(), n + 1, 5);
  std::vector<PointIndex> cands;
  for (PointIndex i = 1; i <= n; ++i) cands.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(max_angle_separated(s, 0, 0.7, cands));
}
BENCHMARK(BM_AngleSeparated)->DenseRange(10, 30, 10);

void BM_StableNorm(benchmark::State& state) {
  const std::vector<LatticePoint> gens{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const long kmax = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(stable_norm_estimate(gens, {1, 1}, kmax));
}
BENCHMARK(BM_StableNorm)->RangeMultiplier(2)->Range(8, 64);

void BM_LrbLaakso(benchmark::State& state) {
  const auto g = laakso_graph(static_cast<int>(state.range(0)));
  const GeodesicSet geo(g.graph);
  for (auto _ : state) benchmark::DoNotOptimize(lrb_constant_estimate(geo, g.root, 1.0, 16));
}
BENCHMARK(BM_LrbLaakso)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
