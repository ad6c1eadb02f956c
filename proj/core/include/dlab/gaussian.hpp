#pragma once

#include <complex>
#include <compare>
#include <string>
#include <string_view>

#include "dlab/exact.hpp"

namespace dlab {

// re + im*i with exact rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(exact::Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(exact::Rational re, exact::Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {exact::Rational(0), exact::Rational(1)}; }

  // Accepts "3", "-1/2", "i", "-i", "2i", "1+i", "1/2-3/4i" (no spaces).
  // Throws InvalidArgument.
  static GaussianRational parse(std::string_view text);

  const exact::Rational& re() const { return re_; }
  const exact::Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  exact::Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  // Throws DivisionByZero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
  // Lexicographic on (re, im); only meaningful as a container key.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string() const;

 private:
  exact::Rational re_;
  exact::Rational im_;
};

}  // namespace dlab
