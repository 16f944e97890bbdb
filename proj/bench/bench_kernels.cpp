// Serial reference kernels against their OpenMP counterparts.
//
//   tpi_bench --benchmark_filter=map

#include <benchmark/benchmark.h>

#include "tpi/kernels.hpp"
#include "tpi/oracle.hpp"

using namespace tpi;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const PhotonPair& reference_pair() {
  static const PhotonPair pair(EmitterParams{700e-12, 600e6, 1.4e9, 0.0},
                               EmitterParams{650e-12, 300e6, 0.8e9, 0.0});
  return pair;
}

void BM_visibility_map(benchmark::State& state) {
  const auto pd = linspace(1.0, 5.0, 200);
  const auto sd = linspace(0.0, 5.0, 200);
  for (auto _ : state) benchmark::DoNotOptimize(visibility_map(pd, sd, mode(state)));
  state.SetItemsProcessed(state.iterations() * 200 * 200);
}

void BM_fidelity_map(benchmark::State& state) {
  const auto pd = linspace(1.0, 5.0, 100);
  const auto sd = linspace(0.0, 5.0, 100);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_map(pd, sd, mode(state)));
  state.SetItemsProcessed(state.iterations() * 100 * 100);
}

void BM_tuning_curve(benchmark::State& state) {
  const auto detunings = linspace(-5e9, 5e9, 10001);
  for (auto _ : state) benchmark::DoNotOptimize(tuning_curve(reference_pair(), detunings, mode(state)));
  state.SetItemsProcessed(state.iterations() * 10001);
}

void BM_mc_phase_factor(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_averaged_phase_factor(reference_pair(), 3.141592653589793, 2e-10, kDefaultTrials, RngSeed{}, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * kDefaultTrials);
}

void BM_mc_g2(benchmark::State& state) {
  const GateMatrix bs = hom_beam_splitter();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_g2(bs, hom_modes(), reference_pair(), 3e-10, 64, RngSeed{}, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

}  // namespace

// Argument 0: serial reference, 1: OpenMP.
BENCHMARK(BM_visibility_map)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fidelity_map)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tuning_curve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_phase_factor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_g2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
