// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "iassr/channel.hpp"
#include "iassr/network.hpp"

namespace {

using iassr::Execution;

void BM_CorrelationLags(benchmark::State& state, Execution exec) {
  const int nt = static_cast<int>(state.range(0));
  const double delta = std::atan(25.0 / 400.0);
  for (auto _ : state) benchmark::DoNotOptimize(iassr::correlation_lags(0.3, delta, nt, 0.5, exec));
  state.SetComplexityN(nt);
}

void BM_Statistics(benchmark::State& state, Execution exec) {
  const iassr::Scenario s = iassr::default_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(iassr::build_statistics(s, exec));
}

void BM_Realization(benchmark::State& state, Execution exec) {
  static const iassr::NetworkStatistics st = iassr::build_statistics(iassr::default_scenario());
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(iassr::sample_realization(st, ++seed, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_CorrelationLags, serial, Execution::Serial)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK_CAPTURE(BM_CorrelationLags, parallel, Execution::Parallel)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK_CAPTURE(BM_Statistics, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Statistics, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Realization, serial, Execution::Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Realization, parallel, Execution::Parallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
