#include <benchmark/benchmark.h>

#include <cmath>

#include "crowdbound/influence.hpp"
#include "crowdbound/omega.hpp"
#include "crowdbound/pipeline.hpp"
#include "crowdbound/rscore.hpp"

using namespace crowdbound;

namespace {

void BM_EstimateOmega(benchmark::State& state) {
  const auto spec = DistributionSpec::log_normal(std::log(2.0), 2.0);
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_omega(spec, 2.0, 50, Centralization(1.0 / 3.0), reps, 9));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(reps) * 50);
}
BENCHMARK(BM_EstimateOmega)->Arg(100)->Arg(1000)->Arg(10000);

void BM_LowerBound(benchmark::State& state) {
  const auto spec = DistributionSpec::log_normal(std::log(2.0), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_bound(spec, 2.0, 50, Centralization(1.0 / 3.0)));
  }
}
BENCHMARK(BM_LowerBound);

void BM_PhaseDiagramSmall(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_diagram(Family::LogNormal, {-1.0, 2.0, 6}, {0.1, 2.5, 6}, 2.0,
                                           50, Centralization(1.0 / 3.0), 500, 11, threads));
  }
}
BENCHMARK(BM_PhaseDiagramSmall)->Arg(1)->Arg(0);

void BM_DegrootStar(benchmark::State& state) {
  const auto matrix = topology_matrix(Topology::Star, static_cast<std::size_t>(state.range(0)),
                                      0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(degroot_influence(matrix, 1e-12));
  }
}
BENCHMARK(BM_DegrootStar)->Arg(10)->Arg(100);

void BM_RScore(benchmark::State& state) {
  const auto data = sample(DistributionSpec::log_normal(0.0, 1.0),
                           static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(r_score(data));
  }
}
BENCHMARK(BM_RScore)->Arg(100)->Arg(1000);

void BM_AnalyzeSynthetic(benchmark::State& state) {
  const auto trials = generate_synthetic({});
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(trials, {}));
  }
}
BENCHMARK(BM_AnalyzeSynthetic);

}  // namespace

BENCHMARK_MAIN();
