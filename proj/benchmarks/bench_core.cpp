#include <benchmark/benchmark.h>

#include <cmath>

#include "psc/bspline.hpp"
#include "psc/compressions.hpp"
#include "psc/numerical_measure.hpp"
#include "psc/numrange.hpp"
#include "psc/pseudospectrum.hpp"
#include "psc/rand_frames.hpp"

using namespace psc;

namespace {

CMatrix ginibre(Index n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample_ginibre(n, rng, 1.0 / std::sqrt(static_cast<double>(n)));
}

void BM_HaarFrame(benchmark::State& state) {
  RngStream rng(1, 0);
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_frame(n, n / 4 + 1, rng));
}
BENCHMARK(BM_HaarFrame)->Arg(12)->Arg(30);

void BM_SplineBuild(benchmark::State& state) {
  std::vector<double> knots(state.range(0));
  for (std::size_t i = 0; i < knots.size(); ++i) knots[i] = std::sqrt(double(i));
  for (auto _ : state) benchmark::DoNotOptimize(bspline_build(knots));
}
BENCHMARK(BM_SplineBuild)->Arg(6)->Arg(12);

void BM_NumericalRange(benchmark::State& state) {
  const CMatrix a = ginibre(20, 2);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_range(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NumericalRange)->Arg(64)->Arg(256);

void BM_InnerRadius(benchmark::State& state) {
  const ConvexRegion w = numerical_range(ginibre(20, 3), 256);
  for (auto _ : state) benchmark::DoNotOptimize(inner_radius(w));
}
BENCHMARK(BM_InnerRadius);

void BM_DensityPoint(benchmark::State& state) {
  const DensityField field(regularize(ginibre(6, 4), 0.05), 512);
  for (auto _ : state) benchmark::DoNotOptimize(field(Complex(0.05, -0.02)));
}
BENCHMARK(BM_DensityPoint);

void BM_PseudospectrumArea(benchmark::State& state) {
  const CMatrix m = ginibre(3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(pseudospectrum_area(m, 1e-2));
}
BENCHMARK(BM_PseudospectrumArea)->Unit(benchmark::kMillisecond);

void BM_ShiftedMin(benchmark::State& state) {
  const CMatrix a = ginibre(20, 6);
  const ConvexRegion w = numerical_range(a, 128);
  for (auto _ : state) benchmark::DoNotOptimize(shifted_min(a, 3, w, 1e-4));
}
BENCHMARK(BM_ShiftedMin)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
