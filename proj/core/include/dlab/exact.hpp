#pragma once

// Exact rational arithmetic for Newton's square-root iteration, residuals,
// continued fractions and the closed-form iterate in Q(sqrt m).
//
// Nothing in this header touches floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dlab::exact {

using BigInt = mpz_class;

// Reduced fraction num/den with den >= 1. Zero is 0/1. Every constructor
// canonicalizes, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);

  // Accepts "p", "p/q" with optional sign. Throws InvalidArgument.
  static Rational parse(std::string_view text);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  // Throws DivisionByZero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // "p/q", or "p" when the denominator is one.
  std::string to_string() const;
  // Always "p/q", the CSV emission format.
  std::string to_fraction_string() const;
  double to_double() const { return value_.get_d(); }

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Finite simple continued fraction [a0; a1, ..., ak] in canonical form:
// a_i >= 1 for i >= 1 and, when k >= 1, a_k >= 2.
class ContinuedFraction {
 public:
  // Validates positivity of the partial quotients and merges a trailing 1
  // into its predecessor. Throws InvalidArgument on an empty list, a
  // non-positive a_i (i >= 1) or a negative a0.
  explicit ContinuedFraction(std::vector<BigInt> terms);

  const std::vector<BigInt>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

  std::string to_string() const;

 private:
  std::vector<BigInt> terms_;
};

// z = a + b*sqrt(m) with m a positive square-free non-square.
class QuadraticFieldElement {
 public:
  // Throws InvalidArgument unless m > 1 is square-free.
  QuadraticFieldElement(Rational a, Rational b, std::int64_t m);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t m() const { return m_; }

  Rational norm() const;  // a^2 - m b^2
  QuadraticFieldElement conjugate() const;

  QuadraticFieldElement operator-() const;
  friend QuadraticFieldElement operator+(const QuadraticFieldElement&, const QuadraticFieldElement&);
  friend QuadraticFieldElement operator-(const QuadraticFieldElement&, const QuadraticFieldElement&);
  friend QuadraticFieldElement operator*(const QuadraticFieldElement&, const QuadraticFieldElement&);
  // Throws DivisionByZero when the divisor has zero norm.
  friend QuadraticFieldElement operator/(const QuadraticFieldElement&, const QuadraticFieldElement&);

  // this^(2^k) by k successive squarings.
  QuadraticFieldElement power_2k(unsigned k) const;

  friend bool operator==(const QuadraticFieldElement&, const QuadraticFieldElement&) = default;

  std::string to_string() const;

 private:
  friend void require_same_field(const QuadraticFieldElement&, const QuadraticFieldElement&);
  Rational a_;
  Rational b_;
  std::int64_t m_;
};

bool is_square_free(std::int64_t m);
bool is_perfect_square(const BigInt& m);

// (x + m/x) / 2. Throws DivisionByZero for x = 0 and InvalidArgument for m <= 0.
Rational newton_sqrt_step(const Rational& x, const BigInt& m);

// [x0, x1, ..., xn].
std::vector<Rational> newton_sqrt_sequence(const BigInt& m, const Rational& x0, std::size_t n);

// x^2 - m: x is the exact square root of m + residual(x, m).
Rational residual(const Rational& x, const BigInt& m);

// Euclidean expansion. Throws InvalidArgument for x <= 0.
ContinuedFraction to_continued_fraction(const Rational& x);

// Exact value of a finite continued fraction via the convergent recurrence.
Rational from_continued_fraction(const ContinuedFraction& cf);

// n-th Newton iterate for z^2 - m from z0 = a/b, computed as
// sqrt(m) (1 + r^(2^n)) / (1 - r^(2^n)) in Q(sqrt m) with
// r = (a - b sqrt m) / (a + b sqrt m). Requires a, b > 0 and m square-free
// non-square; the irrational part of the result is checked to vanish.
Rational closed_form_iterate(const BigInt& a, const BigInt& b, std::int64_t m, unsigned n);

}  // namespace dlab::exact
