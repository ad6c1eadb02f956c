#include <random>

#include <gtest/gtest.h>

#include "dlab/iterate.hpp"
#include "dlab/polyroot.hpp"

using namespace dlab;
using namespace dlab::iterate;
using poly::ComplexPolynomial;

namespace {

const ComplexPolynomial z2_minus_2({-2, 0, 1});
const std::vector<Complex> eq6{0, 1, 1, 2, 4, 5, 5, 3, 1};

constexpr IterationKind all_kinds[] = {IterationKind::newton, IterationKind::halley, IterationKind::householder,
                                       IterationKind::schroeder, IterationKind::secant};

std::size_t nearest_index(const std::vector<Complex>& roots, Complex z) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (std::abs(roots[k] - z) < std::abs(roots[best] - z)) best = k;
  return best;
}

}  // namespace

TEST(IterationKind, NamesRoundTrip) {
  for (auto k : all_kinds) EXPECT_EQ(parse_iteration_kind(to_string(k)), k);
  EXPECT_THROW(parse_iteration_kind("bisection"), InvalidArgument);
}

TEST(Step, NewtonExamples) {
  const auto f = polynomial_evaluator(z2_minus_2);
  EXPECT_EQ(*step(IterationKind::newton, f, 1.0), Complex(1.5));
  const double r2 = std::sqrt(2.0);
  EXPECT_NEAR(std::abs(*step(IterationKind::newton, f, r2) - r2), 0.0, 1e-15);
}

TEST(Step, VariantFormulasOnZSquaredMinusTwo) {
  const auto f = polynomial_evaluator(z2_minus_2);
  // f(1) = -1, f' = 2, f'' = 2, by hand:
  EXPECT_NEAR(std::abs(*step(IterationKind::halley, f, 1.0) - 1.4), 0.0, 1e-15);       // 1 + 4/10
  EXPECT_NEAR(std::abs(*step(IterationKind::householder, f, 1.0) - 1.375), 0.0, 1e-15);  // 1 + (1/2)(1 - 1/4)
  EXPECT_NEAR(std::abs(*step(IterationKind::schroeder, f, 1.0) - 4.0 / 3), 0.0, 1e-15);  // 1 + 2/6
  // secant from (2, 1): 1 - (-1)(1 - 2)/(-1 - 2) = 4/3
  EXPECT_NEAR(std::abs(*step(IterationKind::secant, f, 1.0, 2.0) - 4.0 / 3), 0.0, 1e-15);
}

TEST(Step, VanishingDenominatorSignalsFailure) {
  const auto f = polynomial_evaluator(z2_minus_2);
  EXPECT_FALSE(step(IterationKind::newton, f, 0.0));
  EXPECT_FALSE(step(IterationKind::secant, f, 1.0, -1.0));  // f equal at both points
}

TEST(Step, RootsAreFixedPointsOfEveryKind) {
  const ComplexPolynomial p(eq6);
  const auto f = polynomial_evaluator(p);
  for (const auto& r : classification_roots(p))
    for (auto kind : all_kinds) {
      const auto z = step(kind, f, r, r);
      if (!z) {
        // secant with both points at a root has f(z) = f(z_prev) = 0
        EXPECT_EQ(kind, IterationKind::secant);
        continue;
      }
      EXPECT_LE(std::abs(*z - r), 1e-12 * std::max(1.0, std::abs(r))) << to_string(kind) << " at " << r;
    }
}

TEST(IterateToRoot, Examples) {
  const auto f = polynomial_evaluator(z2_minus_2);
  const std::vector<Complex> roots{-std::sqrt(2.0), std::sqrt(2.0)};
  auto o = iterate_to_root({}, f, 1.0, roots, 1e-10, 100);
  ASSERT_TRUE(o.root_index);
  EXPECT_EQ(*o.root_index, 1u);
  EXPECT_LE(o.iterations, 6u);

  o = iterate_to_root({}, f, roots[0], roots, 1e-10, 100);
  EXPECT_EQ(*o.root_index, 0u);
  EXPECT_EQ(o.iterations, 0u);

  const auto g = polynomial_evaluator(ComplexPolynomial({1, 0, 1}));
  const std::vector<Complex> pm_i{{0, 1}, {0, -1}};
  for (double x : {-3.0, -0.5, 0.25, 0.7, 2.0}) EXPECT_FALSE(iterate_to_root({}, g, x, pm_i, 1e-8, 200).root_index) << x;
}

TEST(IterateToRoot, SecantOffset) {
  IterationMethod m{IterationKind::secant, std::nullopt};
  EXPECT_EQ(m.secant_start(Complex(3, 4)), Complex(3 + 6e-3, 4));
  m.secant_offset = 0.5;
  EXPECT_EQ(m.secant_start(1.0), Complex(1.5));
  m.secant_offset = 0.0;
  EXPECT_THROW(m.secant_start(1.0), InvalidArgument);
}

TEST(RenderBasins, ZSquaredMinusOneSplitsHalfPlanes) {
  const ComplexPolynomial p({-1, 0, 1});
  const auto img = render_basins(p, {}, Window{-2, 2, -2, 2}, 40, 40);
  ASSERT_EQ(img.roots.size(), 2u);
  const std::size_t left = nearest_index(img.roots, -1.0), right = nearest_index(img.roots, 1.0);
  for (std::size_t j = 0; j < img.height; ++j)
    for (std::size_t i = 0; i < img.width; ++i)
      EXPECT_EQ(img.index_at(i, j), static_cast<std::int32_t>(i < 20 ? left : right)) << i << "," << j;
  // 41 columns put the centre column on the imaginary axis, which never converges.
  const auto odd = render_basins(p, {}, Window{-2, 2, -2, 2}, 41, 41);
  for (std::size_t j = 0; j < odd.height; ++j) EXPECT_EQ(odd.index_at(20, j), -1);
}

TEST(RenderBasins, CubeRootsOfUnityHaveThreeFoldSymmetry) {
  const ComplexPolynomial p({-1, 0, 0, 1});
  const auto f = polynomial_evaluator(p);
  const auto roots = classification_roots(p);
  const Complex w = std::polar(1.0, 2 * M_PI / 3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  int checked = 0, mismatched = 0;
  for (int t = 0; t < 4000; ++t) {
    const Complex z(u(rng), u(rng));
    const auto a = iterate_to_root({}, f, z, roots, 1e-8, 100);
    const auto b = iterate_to_root({}, f, w * z, roots, 1e-8, 100);
    if (!a.root_index || !b.root_index) continue;
    ++checked;
    if (nearest_index(roots, w * roots[*a.root_index]) != *b.root_index) ++mismatched;
  }
  EXPECT_GT(checked, 3900);
  // Only points on the fractal boundary may land differently after rounding.
  EXPECT_LE(mismatched, checked / 200);
}

TEST(RenderBasins, RealAxisStaysRealForSquareRoots) {
  for (double m : {2.0, 3.0, 7.0}) {
    const ComplexPolynomial p({-m, 0, 1});
    // Odd height puts the middle row on the real axis.
    const auto img = render_basins(p, {}, Window{0.05, 4, -1, 1}, 50, 21);
    const auto pos = nearest_index(img.roots, std::sqrt(m));
    for (std::size_t i = 0; i < img.width; ++i) EXPECT_EQ(img.index_at(i, 10), static_cast<std::int32_t>(pos));
  }
}

TEST(RenderBasins, PixelCentresAndPurity) {
  const ComplexPolynomial p(eq6);
  const Window w{-1.8, 1.0, -1.4, 1.4};
  const auto a = render_basins(p, {}, w, 64, 48);
  BasinOptions threaded;
  threaded.threads = 3;
  const auto b = render_basins(p, {}, w, 64, 48, threaded);
  EXPECT_EQ(a.root_index, b.root_index);
  EXPECT_EQ(a.iter_count, b.iter_count);
  EXPECT_EQ(w.pixel_center(0, 0, 64, 48), Complex(-1.8 + 2.8 / 128, 1.4 - 2.8 / 96));
  for (auto v : a.root_index) EXPECT_LT(v, 8);
}

TEST(RenderBasins, Rejects) {
  EXPECT_THROW(render_basins(ComplexPolynomial({1}), {}, Window{-1, 1, -1, 1}, 4, 4), InvalidArgument);
  EXPECT_THROW(render_basins(ComplexPolynomial(eq6), {}, Window{1, -1, -1, 1}, 4, 4), InvalidArgument);
}

TEST(Halley, EquivalenceExamples) {
  auto c = halley_equivalence_check(z2_minus_2, 1.0);
  EXPECT_NEAR(std::abs(c.halley - 1.4), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.newton_on_g - 1.4), 0.0, 1e-15);
  const double r2 = std::sqrt(2.0);
  c = halley_equivalence_check(z2_minus_2, r2);
  EXPECT_NEAR(std::abs(c.halley - r2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.newton_on_g - r2), 0.0, 1e-15);
  EXPECT_THROW(halley_equivalence_check(z2_minus_2, 0.0), DivisionByZero);
}

TEST(Halley, EquivalenceOnRandomPairs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<Complex> c(2 + t % 6);
    for (auto& x : c) x = {u(rng), u(rng)};
    const Complex z = std::polar(2 * std::abs(u(rng)), M_PI * u(rng));
    const auto r = halley_equivalence_check(ComplexPolynomial(c), z);
    const double scale = std::max({std::abs(z), std::abs(r.halley - z), 1e-300});
    EXPECT_LE(std::abs(r.halley - r.newton_on_g) / scale, 1e-12) << t;
  }
}
