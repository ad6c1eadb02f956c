#include "dlab/polyroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dlab/parallel.hpp"

namespace dlab::poly {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidArgument("zero polynomial");
}

double ComplexPolynomial::abs_scale(Complex z) const {
  const double r = std::abs(z);
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex& r : roots) {
    c.push_back(Complex{});
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return ComplexPolynomial(std::move(c));
}

Derivatives eval_derivs(const ComplexPolynomial& p, Complex z, int order) {
  if (order < 0 || order > 2) throw InvalidArgument("eval_derivs order must be 0, 1 or 2");
  const auto& a = p.coeffs();
  Complex v = a.back();
  Complex d1{};
  Complex d2{};
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    if (order >= 2) d2 = d2 * z + d1;
    if (order >= 1) d1 = d1 * z + v;
    v = v * z + a[k];
  }
  return {v, d1, 2.0 * d2};
}

double RootSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

std::vector<Complex> aberth_iterate(const std::function<Complex(Complex)>& newton_ratio,
                                    std::vector<Complex> initial, const AberthOptions& options,
                                    std::size_t* iterations_out,
                                    const std::function<bool(Complex, Complex)>& accept) {
  if (!(options.tol > 0)) throw InvalidArgument("Aberth tolerance must be positive");
  const std::size_t n = initial.size();
  std::vector<Complex> z = std::move(initial);
  std::vector<Complex> next(n);
  std::vector<char> done(n, 0);
  std::vector<double> correction(n, std::numeric_limits<double>::infinity());

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    parallel_for_ranges(n, options.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t k = begin; k < end; ++k) {
        next[k] = z[k];
        if (done[k]) continue;
        const Complex ratio = newton_ratio(z[k]);
        if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
          // f'(z) = 0: nudge off the critical point.
          next[k] = z[k] + Complex(1e-7, 1e-7) * (1.0 + std::abs(z[k]));
          continue;
        }
        Complex repulsion{};
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) repulsion += 1.0 / (z[k] - z[j]);
        const Complex w = ratio / (1.0 - ratio * repulsion);
        if (std::abs(ratio) == 0.0 || (accept && accept(z[k], ratio))) {
          correction[k] = std::abs(ratio);
          continue;
        }
        next[k] = z[k] - w;
        correction[k] = std::abs(w);
      }
    });
    std::size_t remaining = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const bool converged = correction[k] <= options.tol * (1.0 + std::abs(z[k])) || next[k] == z[k];
      z[k] = next[k];
      if (converged)
        done[k] = 1;
      else
        ++remaining;
    }
    if (remaining == 0) {
      if (iterations_out) *iterations_out = iter;
      return z;
    }
  }
  RootSet best;
  best.roots = z;
  best.residuals = correction;
  best.iterations = options.max_iter;
  throw AberthFailure("Aberth iteration did not converge within " + std::to_string(options.max_iter) +
                          " sweeps",
                      std::move(best));
}

std::vector<Complex> aberth_initial_guesses(const ComplexPolynomial& p) {
  const std::size_t d = p.degree();
  double bound = 0.0;
  for (std::size_t k = 0; k < d; ++k) bound = std::max(bound, std::abs(p[k] / p.leading()));
  const double radius = 1.0 + bound;
  std::vector<Complex> z(d);
  for (std::size_t j = 0; j < d; ++j)
    z[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d) + 0.4);
  return z;
}

RootSet aberth_roots(const ComplexPolynomial& p, double tol, std::size_t max_iter) {
  if (p.degree() < 1) throw InvalidArgument("aberth_roots requires degree >= 1");
  if (!(tol > 0)) throw InvalidArgument("aberth_roots requires tol > 0");
  RootSet result;
  if (p.degree() == 1) {
    result.roots = {-p[0] / p[1]};
  } else {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const auto ratio = [&](Complex z) {
      const Derivatives d = eval_derivs(p, z, 1);
      return d.value / d.d1;
    };
    // A residual at rounding level is as good as the arithmetic allows; this
    // is what lets clustered (multiple) roots terminate.
    const auto at_rounding_level = [&](Complex z, Complex) {
      return std::abs(eval_derivs(p, z, 0).value) <= 4.0 * eps * static_cast<double>(p.degree()) * p.abs_scale(z);
    };
    AberthOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    try {
      result.roots = aberth_iterate(ratio, aberth_initial_guesses(p), options, &result.iterations,
                                    at_rounding_level);
    } catch (const AberthFailure& failure) {
      RootSet best = failure.best();
      for (std::size_t i = 0; i < best.roots.size(); ++i)
        best.residuals[i] = std::abs(eval_derivs(p, best.roots[i], 0).value) / p.abs_scale(best.roots[i]);
      throw AberthFailure(failure.what(), std::move(best));
    }
  }
  result.residuals.reserve(result.roots.size());
  for (const Complex& r : result.roots) {
    const double scale = p.abs_scale(r);
    result.residuals.push_back(scale == 0.0 ? 0.0 : std::abs(eval_derivs(p, r, 0).value) / scale);
  }
  return result;
}

PolishedRoot polish_root(const ComplexPolynomial& p, Complex z0, std::size_t max_iter) {
  Complex z = z0;
  Derivatives d = eval_derivs(p, z, 1);
  double f = std::abs(d.value);
  if (f == 0.0) return {z, true};
  if (std::abs(d.d1) <= std::numeric_limits<double>::min()) return {z0, false};
  for (std::size_t i = 0; i < max_iter && f > 0.0; ++i) {
    if (std::abs(d.d1) <= std::numeric_limits<double>::min()) return {z, false};
    const Complex candidate = z - d.value / d.d1;
    const Derivatives dc = eval_derivs(p, candidate, 1);
    const double fc = std::abs(dc.value);
    if (!(fc <= f) || candidate == z) break;
    const bool stalled = fc >= f * 0.999;
    z = candidate;
    d = dc;
    f = fc;
    if (stalled) break;
  }
  return {z, true};
}

std::vector<std::vector<std::size_t>> cluster_roots(std::span<const Complex> roots, double radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return clusters;
}

}  // namespace dlab::poly
