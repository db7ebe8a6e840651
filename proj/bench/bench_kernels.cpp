// Serial vs OpenMP comparison for the data-parallel kernels. Run with
// --benchmark_filter to pick a kernel family.

#include <benchmark/benchmark.h>

#include "cantorqc/bounds.hpp"
#include "cantorqc/classify.hpp"
#include "cantorqc/moduli.hpp"
#include "cantorqc/sim.hpp"

using namespace cantorqc;

namespace {

void BM_SampleBatch_Serial(benchmark::State& state) {
  auto m = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    SampleBatch batch = sample_batch_serial(7, 64, m);
    benchmark::DoNotOptimize(batch.data.data());
  }
}

void BM_SampleBatch_Parallel(benchmark::State& state) {
  auto m = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    SampleBatch batch = sample_batch(7, 64, m);
    benchmark::DoNotOptimize(batch.data.data());
  }
}

void BM_MeasureEstimate_Serial(benchmark::State& state) {
  SampleBatch batch = sample_batch(11, 8, static_cast<std::uint32_t>(state.range(0)));
  CylinderSet set;
  set.constraints[1] = {0.0, 0.5};
  set.constraints[4] = {0.25, 0.75};
  for (auto _ : state) {
    Estimate e = measure_estimate_serial(batch, set);
    benchmark::DoNotOptimize(e.value);
  }
}

void BM_MeasureEstimate_Parallel(benchmark::State& state) {
  SampleBatch batch = sample_batch(11, 8, static_cast<std::uint32_t>(state.range(0)));
  CylinderSet set;
  set.constraints[1] = {0.0, 0.5};
  set.constraints[4] = {0.25, 0.75};
  for (auto _ : state) {
    Estimate e = measure_estimate(batch, set);
    benchmark::DoNotOptimize(e.value);
  }
}

void BM_VolumeExperiment_Serial(benchmark::State& state) {
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(5, 200, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    VolumeReport r = volume_experiment_serial(ref, batch, 5.0, {10, 50, 100, 200});
    benchmark::DoNotOptimize(r.fractions.data());
  }
}

void BM_VolumeExperiment_Parallel(benchmark::State& state) {
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(5, 200, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    VolumeReport r = volume_experiment(ref, batch, 5.0, {10, 50, 100, 200});
    benchmark::DoNotOptimize(r.fractions.data());
  }
}

void BM_PsiGrid_Serial(benchmark::State& state) {
  for (auto _ : state) {
    std::string csv = psi_csv_serial(Real("0.001"), Real(1000000),
                                     static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(csv.data());
  }
}

void BM_PsiGrid_Parallel(benchmark::State& state) {
  for (auto _ : state) {
    std::string csv = psi_csv(Real("0.001"), Real(1000000),
                              static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(csv.data());
  }
}

void BM_BoundsCsv_Serial(benchmark::State& state) {
  OmegaSequence omega = OmegaSequence::power_exp(1, 2);
  Real delta = *omega.lower_bound_delta();
  for (auto _ : state) {
    std::string csv = bounds_csv_serial(omega, static_cast<int>(state.range(0)), delta);
    benchmark::DoNotOptimize(csv.data());
  }
}

void BM_BoundsCsv_Parallel(benchmark::State& state) {
  OmegaSequence omega = OmegaSequence::power_exp(1, 2);
  Real delta = *omega.lower_bound_delta();
  for (auto _ : state) {
    std::string csv = bounds_csv(omega, static_cast<int>(state.range(0)), delta);
    benchmark::DoNotOptimize(csv.data());
  }
}

void BM_PairwiseMatrix_Serial(benchmark::State& state) {
  std::vector<Rational> alphas = {Rational(11, 10), Rational(3, 2), Rational(2),
                                  Rational(3), Rational(5)};
  for (auto _ : state) {
    auto m = pairwise_matrix_serial(alphas, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_PairwiseMatrix_Parallel(benchmark::State& state) {
  std::vector<Rational> alphas = {Rational(11, 10), Rational(3, 2), Rational(2),
                                  Rational(3), Rational(5)};
  for (auto _ : state) {
    auto m = pairwise_matrix(alphas, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(m.data());
  }
}

}  // namespace

BENCHMARK(BM_SampleBatch_Serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBatch_Parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureEstimate_Serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureEstimate_Parallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeExperiment_Serial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeExperiment_Parallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsiGrid_Serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsiGrid_Parallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsCsv_Serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsCsv_Parallel)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseMatrix_Serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseMatrix_Parallel)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
