#include <benchmark/benchmark.h>

#include "cqd/jc_oracle.hpp"
#include "cqd/shifts.hpp"
#include "cqd/transmon.hpp"

using namespace cqd;

static void BM_TransmonSpectrum(benchmark::State& state) {
  double E_J = 12.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(physics::transmon_fq_alpha(E_J, 0.25));
    E_J += 1e-9;  // defeat any caching
  }
}
BENCHMARK(BM_TransmonSpectrum);

static void BM_FindEjEc(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(physics::find_ej_ec(4.5, -0.22));
}
BENCHMARK(BM_FindEjEc);

static void BM_PerturbativeShifts(benchmark::State& state) {
  double g = 0.06;
  for (auto _ : state) {
    benchmark::DoNotOptimize(physics::perturbative_shifts(g, 4.216, 6.116, -0.153));
    g += 1e-12;
  }
}
BENCHMARK(BM_PerturbativeShifts);

static void BM_NumericalShifts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::numerical_shifts({6.116, 4.216, -0.153, 0.0603}));
}
BENCHMARK(BM_NumericalShifts)->Unit(benchmark::kMillisecond);
