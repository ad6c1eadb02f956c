#pragma once

// Univariate polynomials over an exact coefficient ring, ascending order.
// The zero polynomial has no coefficients. Division-based operations (divmod,
// gcd) need a field (Rational, GaussianRational).

#include <compare>
#include <utility>
#include <vector>

#include "dlab/error.hpp"

namespace dlab {

template <typename T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  // Integer constant, so UniPoly<T> can serve as a ring element itself.
  explicit UniPoly(long value) : c_{T(value)} { trim(); }
  static UniPoly constant(T value) { return UniPoly(std::vector<T>{std::move(value)}); }
  // a + b x
  static UniPoly linear(T a, T b) { return UniPoly(std::vector<T>{std::move(a), std::move(b)}); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }
  const T& leading() const { return c_.back(); }

  template <typename U>
  U evaluate(const U& x) const {
    U v{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + U(*it);
    return v;
  }

  UniPoly derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return UniPoly(std::move(d));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T{}) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const T& s) {
    std::vector<T> r = a.c_;
    for (T& x : r) x *= s;
    return UniPoly(std::move(r));
  }

  // Quotient and remainder; throws DivisionByZero for a zero divisor.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<T> rem = a.c_;
    std::vector<T> quot(a.c_.size() - b.c_.size() + 1);
    const T& lead = b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
      const T q = rem[k + b.c_.size() - 1] / lead;
      quot[k] = q;
      if (q == T{}) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
    }
    rem.resize(b.c_.size() - 1);
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    const T lead = leading();
    std::vector<T> r = c_;
    for (T& x : r) x /= lead;
    return UniPoly(std::move(r));
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;
  friend auto operator<=>(const UniPoly& a, const UniPoly& b) { return a.c_ <=> b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }
  std::vector<T> c_;
};

// Monic greatest common divisor (zero when both inputs are zero).
template <typename T>
UniPoly<T> gcd(UniPoly<T> a, UniPoly<T> b) {
  while (!b.is_zero()) {
    UniPoly<T> r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// p / gcd(p, p'): same roots, all simple.
template <typename T>
UniPoly<T> square_free_part(const UniPoly<T>& p) {
  if (p.degree() < 1) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

// Yun's algorithm: p = c * prod f_k^k with each f_k monic, square free and
// pairwise coprime. Returns the nonconstant (f_k, k) in increasing k.
template <typename T>
std::vector<std::pair<UniPoly<T>, int>> square_free_factorization(const UniPoly<T>& p) {
  std::vector<std::pair<UniPoly<T>, int>> out;
  if (p.degree() < 1) return out;
  const UniPoly<T> f = p.monic();
  const UniPoly<T> a0 = gcd(f, f.derivative());
  UniPoly<T> b = divmod(f, a0).first;
  UniPoly<T> d = divmod(f.derivative(), a0).first - b.derivative();
  for (int k = 1; b.degree() >= 1; ++k) {
    const UniPoly<T> a = gcd(b, d);
    const UniPoly<T> next = divmod(b, a).first;
    d = divmod(d, a).first - next.derivative();
    if (a.degree() >= 1) out.emplace_back(a, k);
    b = next;
  }
  return out;
}

// Monic least common multiple of nonzero polynomials.
template <typename T>
UniPoly<T> lcm(const UniPoly<T>& a, const UniPoly<T>& b) {
  return divmod(a * b, gcd(a, b)).first.monic();
}

}  // namespace dlab
