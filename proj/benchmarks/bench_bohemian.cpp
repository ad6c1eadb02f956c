#include <benchmark/benchmark.h>

#include "dlab/bohemian.hpp"

using namespace dlab;
using namespace dlab::bohemian;

static void BM_SkewPentaEigensolve(benchmark::State& state) {
  const auto fam = BohemianFamily::skew_pentadiagonal(10);
  const auto pop = Population::parse("1,i");
  const Enumerator en(fam, pop);
  std::vector<ComplexMatrix> members;
  for (std::uint64_t k = 0; k < 64; ++k) members.push_back(build_matrix(fam, pop, en.assignment(k * 2047)));
  linalg::EigenWorkspace ws;
  std::size_t k = 0;
  for (auto _ : state) {
    ComplexMatrix a = members[k++ % members.size()];
    benchmark::DoNotOptimize(ws.solve(a, {}));
  }
}
BENCHMARK(BM_SkewPentaEigensolve);

static void BM_ExactMultiplicitySpectrum(benchmark::State& state) {
  const auto fam = BohemianFamily::skew_pentadiagonal(10);
  const auto pop = Population::parse("1,i");
  const Enumerator en(fam, pop);
  const ExactMatrix a = build_exact_matrix(fam, pop, en.assignment(50861));
  for (auto _ : state) benchmark::DoNotOptimize(exact_multiplicity_spectrum(a));
}
BENCHMARK(BM_ExactMultiplicitySpectrum)->Unit(benchmark::kMicrosecond);

static void BM_DensityPlotSkewPenta(benchmark::State& state) {
  const auto fam = BohemianFamily::skew_pentadiagonal(static_cast<std::size_t>(state.range(0)));
  const auto pop = Population::parse("1,i");
  const Window w{-3.25, 3.25, -3.25, 3.25};
  for (auto _ : state) benchmark::DoNotOptimize(density_plot(fam, pop, w, 256, 256));
}
BENCHMARK(BM_DensityPlotSkewPenta)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FamilyStatistics(benchmark::State& state) {
  const auto fam = BohemianFamily::hessenberg_toeplitz(static_cast<std::size_t>(state.range(0)));
  const auto pop = Population::parse("-1,0,1");
  for (auto _ : state) benchmark::DoNotOptimize(family_statistics(fam, pop));
}
BENCHMARK(BM_FamilyStatistics)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
