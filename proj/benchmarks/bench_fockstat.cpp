#include <benchmark/benchmark.h>

#include "fockstat/fock_oracle.hpp"
#include "fockstat/observables.hpp"
#include "fockstat/special_functions.hpp"
#include "fockstat/states.hpp"
#include "fockstat/sweep.hpp"

namespace {

using namespace fockstat;

void BM_Hyp2F1Terminating(benchmark::State& state) {
  const double m = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2f1_terminating_log({-m, -m, -m - 3.0, -0.36 / 0.64}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hyp2F1Terminating)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_EbsNormalization(benchmark::State& state) {
  const auto route = static_cast<NormalizationRoute>(state.range(1));
  const auto M = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalization_ebs(3, 0.6, M, route));
}
BENCHMARK(BM_EbsNormalization)
    ->ArgsProduct({{10, 1000, 10000},
                   {static_cast<int>(NormalizationRoute::direct_sum), static_cast<int>(NormalizationRoute::hypergeometric)}});

void BM_EnbsNormalization(benchmark::State& state) {
  const auto route = static_cast<NormalizationRoute>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalization_enbs(3, 0.9, 50, route));
}
BENCHMARK(BM_EnbsNormalization)
    ->Arg(static_cast<int>(NormalizationRoute::direct_sum))
    ->Arg(static_cast<int>(NormalizationRoute::finite_sum))
    ->Arg(static_cast<int>(NormalizationRoute::hypergeometric));

void BM_ExcitedExpansion(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  const auto M = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(excited_expansion({family, 2, 0.5, M}));
}
BENCHMARK(BM_ExcitedExpansion)
    ->ArgsProduct({{static_cast<int>(Family::ebs), static_cast<int>(Family::enbs)}, {10, 10000}});

void BM_Statistics(benchmark::State& state) {
  const auto expansion = excited_expansion({Family::enbs, 2, 0.8, 10});
  for (auto _ : state) benchmark::DoNotOptimize(statistics(moments(expansion)));
}
BENCHMARK(BM_Statistics);

void BM_OracleMoments(benchmark::State& state) {
  const auto expansion = excited_expansion({Family::ebs, 2, 0.6, static_cast<unsigned>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(oracle_moments(expansion));
}
BENCHMARK(BM_OracleMoments)->Arg(10)->Arg(50)->Arg(200);

void BM_PresetSweep(benchmark::State& state) {
  const auto spec = preset_spec(preset_names()[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(render_csv(run_sweep(spec)));
}
BENCHMARK(BM_PresetSweep)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
