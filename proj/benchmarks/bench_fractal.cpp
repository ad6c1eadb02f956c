#include <benchmark/benchmark.h>

#include "dlab/iterate.hpp"
#include "dlab/raster.hpp"

using namespace dlab;

static void BM_BasinRender(benchmark::State& state) {
  const poly::ComplexPolynomial p({0, 1, 1, 2, 4, 5, 5, 3, 1});
  const auto side = static_cast<std::size_t>(state.range(0));
  iterate::IterationMethod method;
  method.kind = static_cast<iterate::IterationKind>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(iterate::render_basins(p, method, {-1.8, 1.0, -1.4, 1.4}, side, side));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * side * side));
}
BENCHMARK(BM_BasinRender)
    ->ArgsProduct({{100, 400}, {static_cast<int>(iterate::IterationKind::newton),
                                static_cast<int>(iterate::IterationKind::halley)}})
    ->Unit(benchmark::kMillisecond);

static void BM_AberthRoots(benchmark::State& state) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(state.range(0)) + 1, 1.0);
  const poly::ComplexPolynomial p(c);
  for (auto _ : state) benchmark::DoNotOptimize(poly::aberth_roots(p));
}
BENCHMARK(BM_AberthRoots)->RangeMultiplier(4)->Range(8, 256)->Unit(benchmark::kMicrosecond);
