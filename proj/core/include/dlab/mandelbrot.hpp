#pragma once

// Mandelbrot polynomials z_0 = 0, z_{n+1} = z_n^2 + c, viewed as polynomials
// in c of degree 2^(n-1).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "dlab/exact.hpp"
#include "dlab/polyroot.hpp"
#include "dlab/window.hpp"

namespace dlab::mandelbrot {

using Complex = std::complex<double>;
using exact::BigInt;

inline constexpr unsigned default_coefficient_cap = 12;

// Degree 2^(n-1) for n >= 1, 0 for n = 0.
std::uint64_t degree(unsigned n);

// Index plus optionally materialized exact coefficients a_0..a_d.
struct MandelbrotPoly {
  unsigned n = 0;
  std::optional<std::vector<BigInt>> coeffs;

  std::uint64_t degree() const { return mandelbrot::degree(n); }
  // Fills `coeffs` if empty; throws CapExceeded beyond `cap`.
  const std::vector<BigInt>& coefficients(unsigned cap = default_coefficient_cap);
};

struct Evaluation {
  Complex value;
  Complex derivative;
  bool escaped = false;  // a non-finite value was produced
};

// z_n(c) and z_n'(c) through z <- z^2 + c, z' <- 2 z z' + 1.
Evaluation eval_with_derivative(unsigned n, Complex c);

// Exact monomial coefficients [a_0, ..., a_{2^(n-1)}] by repeated squaring
// of the coefficient vector. Throws CapExceeded (with a cost estimate) for
// n > cap.
std::vector<BigInt> coefficients(unsigned n, unsigned cap = default_coefficient_cap);

// B_n(r) = sum a_k r^k. The coefficients are non-negative so this is the
// monomial-basis condition number on |c| = r. Accumulated in long double to
// keep the range of large n.
long double condition_number(unsigned n, long double radius, unsigned cap = default_coefficient_cap);
// Exact B_n(r) for rational r.
exact::Rational condition_number_exact(unsigned n, const exact::Rational& radius,
                                       unsigned cap = default_coefficient_cap);

struct UnimodalityReport {
  bool unimodal = false;
  std::size_t argmax_index = 0;           // power of c at the first maximal coefficient
  std::size_t peak_count = 0;             // coefficients attaining the maximum
  std::optional<std::size_t> violation;   // power of c where the shape first breaks
};

// Nonzero coefficients must be positive, non-decreasing up to the maximum and
// non-increasing after it. A maximum shared by adjacent coefficients forms a
// single plateau and is accepted; peak_count reports its width.
UnimodalityReport unimodality_check(unsigned n, unsigned cap = default_coefficient_cap);

struct ZeroOptions {
  double tol = 1e-8;
  std::size_t max_iter = 2000;
  unsigned threads = 1;
  unsigned max_n = 12;
};

// All 2^(n-1) zeros of z_n (hyperbolic centers) by Aberth iteration on the
// recurrence, never on monomial coefficients. Starts from the zeros of
// z_{n-1}, each split in two; falls back to a circle start. residuals hold
// |z_n(c) / z_n'(c)|, each <= tol on success. Throws ConvergenceFailure with
// the worst residual otherwise.
poly::RootSet zeros(unsigned n, const ZeroOptions& options = {});

struct PeriodSubset {
  poly::RootSet exact_period;       // zeros not shared with any z_d, d | n, d < n
  std::vector<Complex> removed;     // matched to a lower-period zero
  std::vector<Complex> ambiguous;   // near a lower-period zero but not cleanly matched
};

// Separates the zeros of z_n whose period is exactly n. A zero within
// 10 tol of a lower-period zero is removed when it is that zero's only
// match; several candidates for one lower zero, or a distance between
// 10 tol and 1000 tol, mark it ambiguous.
PeriodSubset exact_period_subset(unsigned n, const ZeroOptions& options = {});

// Same, given precomputed zeros of z_n.
PeriodSubset exact_period_subset(unsigned n, const poly::RootSet& zeros_n, const ZeroOptions& options = {});

// First k <= max_iter with |z_k| > escape_radius, else max_iter.
std::uint32_t escape_time(Complex c, std::uint32_t max_iter, double escape_radius = 2.0);

struct EscapeGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  Window window;
  std::uint32_t max_iter = 0;
  std::vector<std::uint32_t> counts;  // row-major, top row first
};

// Throws InvalidArgument for an invalid window, an empty raster or
// escape_radius < 2.
EscapeGrid escape_time_render(const Window& window, std::size_t width, std::size_t height, std::uint32_t max_iter,
                              double escape_radius = 2.0, unsigned threads = 1);

}  // namespace dlab::mandelbrot
