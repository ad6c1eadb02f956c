#include "dlab/eigen.hpp"

#include <cmath>
#include <string>

namespace dlab::linalg {

namespace {

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Diagonal similarity by powers of two so row and column norms are comparable.
void balance(ComplexMatrix& a) {
  const std::size_t n = a.n;
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        changed = true;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(ComplexMatrix& a, std::vector<Complex>& v) {
  const std::size_t n = a.n;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double tail = 0.0;
    for (std::size_t i = 1; i < len; ++i) tail += std::norm(a(k + 1 + i, k));
    if (tail == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    v.assign(len, Complex{});
    v[0] = x0 - alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = a(k + 1 + i, k);
    double vnorm = 0.0;
    for (const Complex& z : v) vnorm += std::norm(z);
    vnorm = std::sqrt(vnorm);
    for (Complex& z : v) z /= vnorm;
    // A <- (I - 2 v v^H) A
    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= v[i] * s;
    }
    // A <- A (I - 2 v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = 0; j < len; ++j) s += a(i, k + 1 + j) * v[j];
      s *= 2.0;
      for (std::size_t j = 0; j < len; ++j) a(i, k + 1 + j) -= s * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = 1; i < len; ++i) a(k + 1 + i, k) = Complex{};
  }
}

void eigenvalues_2x2(Complex a, Complex b, Complex c, Complex d, Complex& l1, Complex& l2) {
  const Complex mean = 0.5 * (a + d);
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  // Larger-magnitude root first, the other from the determinant.
  l1 = std::abs(mean + disc) >= std::abs(mean - disc) ? mean + disc : mean - disc;
  const Complex det = a * d - b * c;
  l2 = l1 == Complex{} ? Complex{} : det / l1;
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  Complex l1, l2;
  eigenvalues_2x2(a, b, c, d, l1, l2);
  return std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data) s += std::norm(z);
  return std::sqrt(s);
}

Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.n; ++i) t += a(i, i);
  return t;
}

std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& options) {
  EigenWorkspace ws;
  return ws.solve(a, options);
}

const std::vector<Complex>& EigenWorkspace::solve(ComplexMatrix& a, const EigenOptions& options) {
  const std::size_t n = a.n;
  if (n == 0 || a.data.size() != n * n) throw InvalidArgument("eigenvalues requires a nonempty square matrix");
  values_.clear();
  values_.reserve(n);
  if (n == 1) {
    values_.push_back(a(0, 0));
    return values_;
  }
  balance(a);
  reduce_to_hessenberg(a, householder_);
  const double scale = frobenius_norm(a);
  rot_c_.resize(n);
  rot_s_.resize(n);

  const std::size_t budget = options.sweeps_per_dim * n;
  std::size_t sweeps = 0;
  std::size_t stalled = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    if (hi == 0) {
      values_.push_back(a(0, 0));
      break;
    }
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
      double s = std::abs(a(l, l)) + std::abs(a(l - 1, l - 1));
      if (s == 0.0) s = scale;
      if (std::abs(a(l, l - 1)) <= options.deflation_tol * s) {
        a(l, l - 1) = Complex{};
        break;
      }
    }
    if (l == hi) {
      values_.push_back(a(hi, hi));
      --hi;
      stalled = 0;
      continue;
    }
    if (l == hi - 1) {
      Complex l1, l2;
      eigenvalues_2x2(a(l, l), a(l, hi), a(hi, l), a(hi, hi), l1, l2);
      values_.push_back(l1);
      values_.push_back(l2);
      hi -= 2;
      stalled = 0;
      continue;
    }
    if (++sweeps > budget)
      throw ConvergenceFailure("QR iteration did not converge within " + std::to_string(budget) + " sweeps");
    ++stalled;
    Complex shift;
    if (stalled % 10 == 0) {
      // Exceptional shift breaks symmetric stagnation cycles.
      shift = a(hi, hi) + Complex(0.75 * std::abs(a(hi, hi - 1)), 0.25 * std::abs(a(hi - 1, hi - 2)));
    } else {
      shift = wilkinson_shift(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
    }
    const auto lo = static_cast<std::size_t>(l);
    const auto top = static_cast<std::size_t>(hi);
    for (std::size_t k = lo; k <= top; ++k) a(k, k) -= shift;
    for (std::size_t k = lo; k < top; ++k) {
      const Complex x = a(k, k);
      const Complex y = a(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      const Complex c = r == 0.0 ? Complex(1.0) : x / r;
      const Complex s = r == 0.0 ? Complex{} : y / r;
      rot_c_[k] = c;
      rot_s_[k] = s;
      for (std::size_t j = k; j <= top; ++j) {
        const Complex t1 = a(k, j);
        const Complex t2 = a(k + 1, j);
        a(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        a(k + 1, j) = -s * t1 + c * t2;
      }
    }
    for (std::size_t k = lo; k < top; ++k) {
      const Complex c = rot_c_[k];
      const Complex s = rot_s_[k];
      const std::size_t last = std::min(k + 2, top);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex t1 = a(i, k);
        const Complex t2 = a(i, k + 1);
        a(i, k) = t1 * c + t2 * s;
        a(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
    }
    for (std::size_t k = lo; k <= top; ++k) a(k, k) += shift;
  }
  return values_;
}

}  // namespace dlab::linalg
