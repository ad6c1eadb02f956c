#include <benchmark/benchmark.h>

#include "dlab/exact.hpp"

using namespace dlab::exact;

static void BM_NewtonSqrtSequence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(newton_sqrt_sequence(2, Rational(1), n));
}
BENCHMARK(BM_NewtonSqrtSequence)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_ContinuedFraction(benchmark::State& state) {
  const Rational x = newton_sqrt_sequence(2, Rational(1), static_cast<std::size_t>(state.range(0))).back();
  for (auto _ : state) benchmark::DoNotOptimize(to_continued_fraction(x));
}
BENCHMARK(BM_ContinuedFraction)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
