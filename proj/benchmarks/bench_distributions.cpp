#include <benchmark/benchmark.h>

#include "crowdbound/distributions.hpp"
#include "crowdbound/rng.hpp"

using namespace crowdbound;

namespace {

void BM_Uniform01(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng::uniform01(42, index++));
  }
}
BENCHMARK(BM_Uniform01);

void BM_SampleAt(benchmark::State& state, DistributionSpec spec) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_at(spec, 42, index++));
  }
}
BENCHMARK_CAPTURE(BM_SampleAt, normal, DistributionSpec::normal(0.0, 1.0));
BENCHMARK_CAPTURE(BM_SampleAt, lognormal, DistributionSpec::log_normal(0.7, 2.0));
BENCHMARK_CAPTURE(BM_SampleAt, pareto, DistributionSpec::pareto(1.0, 1.5));
BENCHMARK_CAPTURE(BM_SampleAt, loglaplace, DistributionSpec::log_laplace(0.0, 1.0));

void BM_SampleBatch(benchmark::State& state) {
  const auto spec = DistributionSpec::log_normal(0.7, 2.0);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(spec, count, 7));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(count));
}
BENCHMARK(BM_SampleBatch)->Range(64, 64 << 8);

void BM_FitMle(benchmark::State& state) {
  const auto data = sample(DistributionSpec::log_normal(0.5, 1.2), 1000, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_mle(Family::LogNormal, data));
  }
}
BENCHMARK(BM_FitMle);

}  // namespace
