#include <benchmark/benchmark.h>

#include "cavity/eigensolve.hpp"
#include "cavity/special_fn.hpp"

using namespace cavity;

static void BM_OverlapTable(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_overlap_table(1.5, size));
}
BENCHMARK(BM_OverlapTable)->Arg(40)->Arg(160)->Arg(512)->Unit(benchmark::kMicrosecond);

// N = 10, J = 5, n_max = 19: a 220 x 220 matrix.
static void BM_TenAtomAssembleAndSolve(benchmark::State& state) {
  const ModelParams p = ModelParams::main_series(10, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(build_dicke_coulomb(p, 19)));
}
BENCHMARK(BM_TenAtomAssembleAndSolve)->Unit(benchmark::kMillisecond);

static void BM_RabiConverged(benchmark::State& state) {
  const ModelParams p = ModelParams::main_series(1, 1.0, static_cast<double>(state.range(0)) / 10.0);
  const ConvergenceOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(converged_spectrum(make_builder(p), opts));
}
BENCHMARK(BM_RabiConverged)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

// main lives here: the distro libbenchmark_main.a carries LTO objects from another compiler
BENCHMARK_MAIN();
