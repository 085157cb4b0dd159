#include <benchmark/benchmark.h>

#include "sdn/applications.hpp"
#include "sdn/denoise.hpp"
#include "sdn/localized.hpp"
#include "sdn/simlab/noise.hpp"
#include "sdn/simlab/signals.hpp"
#include "sdn/svd.hpp"

using namespace sdn;

namespace {

Matrix spiked(Index p, Index n, std::uint64_t seed) {
  Vector t(3);
  t << 4.0, 3.0, 2.0;
  const auto sig = simlab::gen_signal(simlab::SignalSpec{p, n, simlab::RandomOrthonormal{t, seed}});
  simlab::NoiseSpec ns;
  ns.seed = seed + 1;
  return sig.X + simlab::gen_noise(ns, p, n);
}

void BM_LeadingTripletsLanczos(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix Y = spiked(n / 2, n, 1);
  SvdOptions opts;
  opts.dense_cutoff = 0;
  for (auto _ : state) benchmark::DoNotOptimize(leading_triplets(Y, 5, opts));
}
BENCHMARK(BM_LeadingTripletsLanczos)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_LeadingTripletsDense(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix Y = spiked(n / 2, n, 1);
  SvdOptions opts;
  opts.dense_cutoff = 1 << 20;
  for (auto _ : state) benchmark::DoNotOptimize(leading_triplets(Y, 5, opts));
}
BENCHMARK(BM_LeadingTripletsDense)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SpectralDenoiseDiagonalWeights(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix Y = spiked(n / 2, n, 2);
  const WeightOperator om = WeightOperator::diagonal(Vector::LinSpaced(n / 2, 0.1, 1.0));
  const WeightOperator pi = WeightOperator::diagonal(Vector::LinSpaced(n, 1.0, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_denoise(Y, om, pi));
}
BENCHMARK(BM_SpectralDenoiseDiagonalWeights)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_GeometryOnly(benchmark::State& state) {
  const Index n = 2000;
  const Matrix Y = spiked(n / 2, n, 3);
  const SpectralBasis basis = spectral_basis(Y);
  const WeightOperator om = WeightOperator::diagonal(Vector::LinSpaced(n / 2, 0.1, 1.0));
  const WeightOperator pi = WeightOperator::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_coefficients(basis, om, pi));
}
BENCHMARK(BM_GeometryOnly)->Unit(benchmark::kMicrosecond);

void BM_LocalizedBlocks(benchmark::State& state) {
  const Index n = 800;
  const Matrix Y = spiked(n, n, 4);
  const SpectralBasis basis = spectral_basis(Y);
  const Partition rows = make_equispaced_partition(n, state.range(0));
  const Partition cols = make_equispaced_partition(n, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(localized_denoise(basis, rows, cols));
}
BENCHMARK(BM_LocalizedBlocks)->Arg(1)->Arg(4)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_NoiseGeneration(benchmark::State& state) {
  simlab::NoiseSpec ns;
  ns.seed = 5;
  for (auto _ : state) benchmark::DoNotOptimize(simlab::gen_noise(ns, 1000, 2000));
}
BENCHMARK(BM_NoiseGeneration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
