#pragma once

// Newton-type iteration maps and the basin-of-attraction rasterizer.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlab/polyroot.hpp"
#include "dlab/window.hpp"

namespace dlab::iterate {

using poly::Complex;

enum class IterationKind { newton, halley, householder, schroeder, secant };

std::string_view to_string(IterationKind kind);
// Throws InvalidArgument for an unknown name.
IterationKind parse_iteration_kind(std::string_view name);

struct IterationMethod {
  IterationKind kind = IterationKind::newton;
  // Offset h of the secant method's second starting point z0 + h. When unset
  // h = 1e-3 (1 + |z0|). Must be nonzero when set.
  std::optional<double> secant_offset;

  Complex secant_start(Complex z0) const;
};

// f and its first two derivatives at a point.
using Evaluator = std::function<poly::Derivatives(Complex)>;

Evaluator polynomial_evaluator(const poly::ComplexPolynomial& p);

// One step of the method. For the secant method `previous` is the older of
// the two points. Returns nullopt when the step's denominator vanishes or
// the result is not finite.
std::optional<Complex> step(IterationKind kind, const Evaluator& f, Complex z, Complex previous = {});

struct IterationOutcome {
  std::optional<std::size_t> root_index;
  std::size_t iterations = 0;
};

// Iterates from z0 until an iterate lies within tol of one of `roots`
// (nearest root wins) or max_iter steps have been taken.
IterationOutcome iterate_to_root(const IterationMethod& method, const Evaluator& f, Complex z0,
                                 std::span<const Complex> roots, double tol, std::size_t max_iter);

struct BasinImage {
  std::size_t width = 0;
  std::size_t height = 0;
  Window window;
  std::size_t root_count = 0;
  std::size_t max_iter = 0;
  std::vector<std::int32_t> root_index;  // row-major, top row first; -1 = unconverged
  std::vector<std::uint32_t> iter_count;
  std::vector<Complex> roots;

  std::int32_t index_at(std::size_t i, std::size_t j) const { return root_index[j * width + i]; }
  double converged_fraction() const;
};

struct BasinOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100;
  unsigned threads = 1;
};

// Classifies the center of every pixel by the root its iteration reaches.
// The roots of p are found first (Aberth, then Newton polish); a root-finding
// failure propagates. Output is independent of the thread count.
BasinImage render_basins(const poly::ComplexPolynomial& p, const IterationMethod& method, const Window& window,
                         std::size_t width, std::size_t height, const BasinOptions& options = {});

// Roots used by render_basins for classification.
std::vector<Complex> classification_roots(const poly::ComplexPolynomial& p);

struct HalleyComparison {
  Complex halley;
  Complex newton_on_g;
};

// Halley step on f next to the Newton step on g = f / sqrt(f'), the latter
// through g'/g = f'/f - f''/(2 f'). Throws DivisionByZero when f'(z) = 0 or
// the Halley denominator vanishes.
HalleyComparison halley_equivalence_check(const poly::ComplexPolynomial& p, Complex z);

}  // namespace dlab::iterate
