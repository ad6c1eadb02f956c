#pragma once

// Dense complex polynomials, Horner evaluation with derivatives and
// simultaneous (Ehrlich-Aberth) root finding.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dlab/error.hpp"

namespace dlab::poly {

using Complex = std::complex<double>;

// Coefficients in ascending degree order. Trailing zeros are trimmed at
// construction so the leading coefficient is nonzero.
class ComplexPolynomial {
 public:
  // Throws InvalidArgument for the zero polynomial.
  explicit ComplexPolynomial(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }
  const Complex& leading() const { return coeffs_.back(); }

  // sum |a_k| |z|^k, the evaluation scale used for residuals.
  double abs_scale(Complex z) const;

  // prod (z - r_i) scaled by `leading`.
  static ComplexPolynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

 private:
  std::vector<Complex> coeffs_;
};

struct Derivatives {
  Complex value;
  Complex d1;
  Complex d2;
};

// p(z) and the first `order` derivatives (order in {0, 1, 2}); unrequested
// entries are zero.
Derivatives eval_derivs(const ComplexPolynomial& p, Complex z, int order = 2);

struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  std::size_t iterations = 0;

  double max_residual() const;
};

struct AberthOptions {
  double tol = 1e-12;
  std::size_t max_iter = 500;
  unsigned threads = 1;
};

// Failure carrying the best iterates reached.
class AberthFailure : public ConvergenceFailure {
 public:
  AberthFailure(const std::string& what, RootSet best)
      : ConvergenceFailure(what), best_(std::move(best)) {}
  const RootSet& best() const { return best_; }

 private:
  RootSet best_;
};

// Generic simultaneous iteration. `newton_ratio(z)` returns f(z)/f'(z) and
// `accept(z, ratio)` may declare an estimate converged on grounds other than
// the correction size (for example a residual at rounding level). Each sweep
// reads only the previous sweep's estimates (Jacobi style), so the result
// does not depend on the thread count. A root is frozen once its correction
// satisfies |w| <= tol (1 + |z|). On budget exhaustion throws AberthFailure
// with residuals set to the last correction sizes.
std::vector<Complex> aberth_iterate(const std::function<Complex(Complex)>& newton_ratio,
                                    std::vector<Complex> initial, const AberthOptions& options,
                                    std::size_t* iterations_out = nullptr,
                                    const std::function<bool(Complex, Complex)>& accept = {});

// Starting points on a circle of radius 1 + max |a_k / a_d|, angles
// 2 pi j / d + 0.4.
std::vector<Complex> aberth_initial_guesses(const ComplexPolynomial& p);

// All deg(p) roots. residuals[i] = |p(r_i)| / sum |a_k| |r_i|^k.
RootSet aberth_roots(const ComplexPolynomial& p, double tol = 1e-12, std::size_t max_iter = 500);

struct PolishedRoot {
  Complex root;
  bool polished = true;
};

// Newton refinement that only accepts steps that do not increase |p|.
// A vanishing derivative returns the input with polished = false.
PolishedRoot polish_root(const ComplexPolynomial& p, Complex z0, std::size_t max_iter = 50);

// Groups roots lying within `radius` of each other (single linkage).
// Returns clusters of indices into `roots`; cluster size is the multiplicity.
std::vector<std::vector<std::size_t>> cluster_roots(std::span<const Complex> roots, double radius);

}  // namespace dlab::poly
