#include "dlab/mandelbrot.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dlab/error.hpp"
#include "dlab/parallel.hpp"

namespace dlab::mandelbrot {

namespace {

long double to_long_double(const BigInt& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(mantissa), static_cast<int>(exponent));
}

void check_cap(unsigned n, unsigned cap) {
  if (n <= cap) return;
  // Squaring the degree-2^(n-2) vector costs about (2^(n-2))^2 / 2 products.
  const int log2_products = 2 * static_cast<int>(n) - 5;
  throw CapExceeded("exact coefficients of z_" + std::to_string(n) + " (degree 2^" + std::to_string(n - 1) +
                    ") exceed the cap n <= " + std::to_string(cap) + "; estimated cost ~2^" +
                    std::to_string(log2_products) + " big-integer multiplications");
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::uint64_t degree(unsigned n) { return n == 0 ? 0 : std::uint64_t{1} << (n - 1); }

const std::vector<BigInt>& MandelbrotPoly::coefficients(unsigned cap) {
  if (!coeffs) coeffs = mandelbrot::coefficients(n, cap);
  return *coeffs;
}

Evaluation eval_with_derivative(unsigned n, Complex c) {
  Complex z{};
  Complex dz{};
  for (unsigned k = 0; k < n; ++k) {
    dz = 2.0 * z * dz + 1.0;
    z = z * z + c;
    if (!finite(z) || !finite(dz)) return {z, dz, true};
  }
  return {z, dz, false};
}

std::vector<BigInt> coefficients(unsigned n, unsigned cap) {
  check_cap(n, cap);
  std::vector<BigInt> p{BigInt(0)};
  for (unsigned step = 0; step < n; ++step) {
    const std::size_t len = p.size();
    std::vector<BigInt> q(std::max<std::size_t>(2 * len - 1, 2));
    // q_k = sum_{i+j=k} p_i p_j = 2 sum_{i<j} p_i p_j + p_{k/2}^2
    for (std::size_t i = 0; i < len; ++i) {
      if (p[i] == 0) continue;
      for (std::size_t j = i + 1; j < len; ++j) mpz_addmul(q[i + j].get_mpz_t(), p[i].get_mpz_t(), p[j].get_mpz_t());
    }
    for (auto& x : q) x *= 2;
    for (std::size_t i = 0; i < len; ++i) mpz_addmul(q[2 * i].get_mpz_t(), p[i].get_mpz_t(), p[i].get_mpz_t());
    q[1] += 1;
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    p = std::move(q);
  }
  return p;
}

long double condition_number(unsigned n, long double radius, unsigned cap) {
  if (radius < 0) throw InvalidArgument("condition_number radius must be non-negative");
  const std::vector<BigInt> a = coefficients(n, cap);
  long double b = 0.0L;
  for (auto it = a.rbegin(); it != a.rend(); ++it) b = b * radius + to_long_double(*it);
  return b;
}

exact::Rational condition_number_exact(unsigned n, const exact::Rational& radius, unsigned cap) {
  if (radius.sign() < 0) throw InvalidArgument("condition_number radius must be non-negative");
  const std::vector<BigInt> a = coefficients(n, cap);
  exact::Rational b(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) b = b * radius + exact::Rational(*it);
  return b;
}

UnimodalityReport unimodality_check(unsigned n, unsigned cap) {
  const std::vector<BigInt> a = coefficients(n, cap);
  UnimodalityReport report;
  bool falling = false;
  const BigInt* previous = nullptr;
  const BigInt* best = nullptr;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const BigInt& x = a[k];
    if (x == 0) continue;
    if (x < 0) {
      report.violation = k;
      break;
    }
    if (!best || x > *best) {
      best = &x;
      report.argmax_index = k;
    }
    if (previous) {
      if (!falling && x < *previous) falling = true;
      if (falling && x > *previous && !report.violation) report.violation = k;
    }
    previous = &x;
  }
  if (best)
    for (const BigInt& x : a) report.peak_count += (x == *best) ? 1 : 0;
  report.unimodal = best != nullptr && !report.violation;
  return report;
}

poly::RootSet zeros(unsigned n, const ZeroOptions& options) {
  if (n < 1) throw InvalidArgument("z_0 = 0 has no isolated zeros; need n >= 1");
  if (n > options.max_n)
    throw CapExceeded("zeros of z_" + std::to_string(n) + " exceed the cap n <= " + std::to_string(options.max_n));
  if (!(options.tol > 0)) throw InvalidArgument("zeros requires tol > 0");
  poly::RootSet result;
  if (n == 1) {
    result.roots = {Complex{}};
    result.residuals = {0.0};
    return result;
  }
  const std::uint64_t d = degree(n);
  const auto ratio = [n, d](Complex c) {
    const Evaluation e = eval_with_derivative(n, c);
    if (e.escaped) return c / static_cast<double>(d);  // z_n ~ c^d far outside the set
    return e.value / e.derivative;
  };
  poly::AberthOptions aberth;
  aberth.tol = 1e-2 * options.tol;
  aberth.max_iter = options.max_iter;
  aberth.threads = options.threads;

  std::vector<Complex> split;
  {
    const poly::RootSet previous = zeros(n - 1, options);
    const std::size_t m = previous.roots.size();
    split.reserve(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m) + 0.4;
      const Complex offset = std::polar(1e-3, angle);
      split.push_back(previous.roots[j] + offset);
      split.push_back(previous.roots[j] - offset);
    }
  }
  std::vector<Complex> circle(d);
  for (std::size_t j = 0; j < d; ++j)
    circle[j] = std::polar(2.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d) + 0.4);

  double worst = 0.0;
  for (std::vector<Complex>* start : {&split, &circle}) {
    try {
      std::size_t iterations = 0;
      std::vector<Complex> roots = poly::aberth_iterate(ratio, *start, aberth, &iterations);
      std::vector<double> residuals(roots.size());
      worst = 0.0;
      for (std::size_t k = 0; k < roots.size(); ++k) {
        const Evaluation e = eval_with_derivative(n, roots[k]);
        residuals[k] = e.escaped ? INFINITY : std::abs(e.value / e.derivative);
        worst = std::max(worst, residuals[k]);
      }
      if (worst <= options.tol) {
        result.roots = std::move(roots);
        result.residuals = std::move(residuals);
        result.iterations = iterations;
        return result;
      }
    } catch (const poly::AberthFailure& failure) {
      worst = failure.best().max_residual();
    }
  }
  throw ConvergenceFailure("zeros of z_" + std::to_string(n) + " did not converge; worst residual " +
                           std::to_string(worst));
}

PeriodSubset exact_period_subset(unsigned n, const ZeroOptions& options) {
  return exact_period_subset(n, zeros(n, options), options);
}

PeriodSubset exact_period_subset(unsigned n, const poly::RootSet& zeros_n, const ZeroOptions& options) {
  const double near = 10.0 * options.tol;
  const double far = 1000.0 * options.tol;
  std::vector<char> status(zeros_n.roots.size(), 0);  // 0 keep, 1 removed, 2 ambiguous
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const poly::RootSet lower = zeros(d, options);
    for (const Complex& r : lower.roots) {
      std::vector<std::size_t> matches;
      for (std::size_t k = 0; k < zeros_n.roots.size(); ++k) {
        const double dist = std::abs(zeros_n.roots[k] - r);
        if (dist <= near)
          matches.push_back(k);
        else if (dist <= far && status[k] == 0)
          status[k] = 2;
      }
      if (matches.size() == 1) {
        status[matches[0]] = 1;
      } else {
        for (std::size_t k : matches) status[k] = 2;
      }
    }
  }
  PeriodSubset out;
  for (std::size_t k = 0; k < zeros_n.roots.size(); ++k) {
    switch (status[k]) {
      case 0:
        out.exact_period.roots.push_back(zeros_n.roots[k]);
        out.exact_period.residuals.push_back(k < zeros_n.residuals.size() ? zeros_n.residuals[k] : 0.0);
        break;
      case 1: out.removed.push_back(zeros_n.roots[k]); break;
      default: out.ambiguous.push_back(zeros_n.roots[k]); break;
    }
  }
  out.exact_period.iterations = zeros_n.iterations;
  return out;
}

std::uint32_t escape_time(Complex c, std::uint32_t max_iter, double escape_radius) {
  const double r2 = escape_radius * escape_radius;
  Complex z{};
  for (std::uint32_t k = 1; k <= max_iter; ++k) {
    z = z * z + c;
    if (std::norm(z) > r2) return k;
  }
  return max_iter;
}

EscapeGrid escape_time_render(const Window& window, std::size_t width, std::size_t height, std::uint32_t max_iter,
                              double escape_radius, unsigned threads) {
  window.validate();
  if (width == 0 || height == 0) throw InvalidArgument("escape_time_render requires a nonempty raster");
  if (!(escape_radius >= 2.0)) throw InvalidArgument("escape radius must be at least 2");
  EscapeGrid grid;
  grid.width = width;
  grid.height = height;
  grid.window = window;
  grid.max_iter = max_iter;
  grid.counts.assign(width * height, 0);
  parallel_for_ranges(width * height, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k)
      grid.counts[k] = escape_time(window.pixel_center(k % width, k / width, width, height), max_iter, escape_radius);
  });
  return grid;
}

}  // namespace dlab::mandelbrot
