#include <benchmark/benchmark.h>

#include "dlab/mandelbrot.hpp"

using namespace dlab;

static void BM_MandelbrotZeros(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mandelbrot::zeros(n));
}
BENCHMARK(BM_MandelbrotZeros)->DenseRange(7, 11, 2)->Unit(benchmark::kMillisecond);

static void BM_MandelbrotCoefficients(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mandelbrot::coefficients(n));
}
BENCHMARK(BM_MandelbrotCoefficients)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_EscapeRender(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mandelbrot::escape_time_render({-2.25, 0.75, -1.5, 1.5}, side, side, 500, 2.0, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * side * side));
}
BENCHMARK(BM_EscapeRender)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
