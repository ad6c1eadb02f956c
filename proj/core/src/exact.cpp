#include "dlab/exact.hpp"

#include <ostream>
#include <sstream>

#include "dlab/error.hpp"

namespace dlab::exact {

Rational::Rational(long value) : value_(value) {}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto bad = [&] { return InvalidArgument("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  const auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return BigInt(t, 10);
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw bad();
    return Rational(to_int(s));
  }
  const std::string p = s.substr(0, slash);
  const std::string q = s.substr(slash + 1);
  if (!valid_int(p) || !valid_int(q) || q[0] == '-' || q[0] == '+') throw bad();
  return Rational(to_int(p), to_int(q));
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return to_fraction_string();
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

ContinuedFraction::ContinuedFraction(std::vector<BigInt> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("empty continued fraction");
  if (terms_[0] < 0) throw InvalidArgument("continued fraction with negative leading term");
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i] < 1) throw InvalidArgument("continued fraction partial quotient below 1");
  // [..., a, 1] == [..., a + 1]
  if (terms_.size() > 1 && terms_.back() == 1) {
    terms_.pop_back();
    terms_.back() += 1;
  }
}

std::string ContinuedFraction::to_string() const {
  std::ostringstream os;
  os << '[' << terms_[0].get_str();
  for (std::size_t i = 1; i < terms_.size(); ++i) os << (i == 1 ? "; " : ", ") << terms_[i].get_str();
  os << ']';
  return os.str();
}

bool is_perfect_square(const BigInt& m) { return m >= 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0; }

bool is_square_free(std::int64_t m) {
  if (m <= 0) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

void require_same_field(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  if (x.m_ != y.m_) throw InvalidArgument("quadratic field elements with different m");
}

QuadraticFieldElement::QuadraticFieldElement(Rational a, Rational b, std::int64_t m)
    : a_(std::move(a)), b_(std::move(b)), m_(m) {
  if (m <= 1 || !is_square_free(m))
    throw InvalidArgument("Q(sqrt m) requires a square-free m > 1, got " + std::to_string(m));
}

Rational QuadraticFieldElement::norm() const { return a_ * a_ - Rational(m_) * b_ * b_; }

QuadraticFieldElement QuadraticFieldElement::conjugate() const { return {a_, -b_, m_}; }

QuadraticFieldElement QuadraticFieldElement::operator-() const { return {-a_, -b_, m_}; }

QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ + y.a_, x.b_ + y.b_, x.m_};
}

QuadraticFieldElement operator-(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ - y.a_, x.b_ - y.b_, x.m_};
}

QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ * y.a_ + Rational(x.m_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.m_};
}

QuadraticFieldElement operator/(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  require_same_field(x, y);
  const Rational n = y.norm();
  if (n.is_zero()) throw DivisionByZero("division by a zero element of Q(sqrt m)");
  // x / y = x * conj(y) / N(y)
  const QuadraticFieldElement p = x * y.conjugate();
  return {p.a_ / n, p.b_ / n, x.m_};
}

QuadraticFieldElement QuadraticFieldElement::power_2k(unsigned k) const {
  QuadraticFieldElement result = *this;
  for (unsigned i = 0; i < k; ++i) result = result * result;
  return result;
}

std::string QuadraticFieldElement::to_string() const {
  return a_.to_string() + " + " + b_.to_string() + "*sqrt(" + std::to_string(m_) + ")";
}

Rational newton_sqrt_step(const Rational& x, const BigInt& m) {
  if (m <= 0) throw InvalidArgument("newton_sqrt_step requires m > 0");
  if (x.is_zero()) throw DivisionByZero("newton_sqrt_step at x = 0");
  return (x + Rational(m) / x) / Rational(2);
}

std::vector<Rational> newton_sqrt_sequence(const BigInt& m, const Rational& x0, std::size_t n) {
  std::vector<Rational> seq;
  seq.reserve(n + 1);
  seq.push_back(x0);
  if (n > 0 && x0.is_zero()) throw DivisionByZero("newton_sqrt_sequence from x0 = 0");
  for (std::size_t i = 0; i < n; ++i) seq.push_back(newton_sqrt_step(seq.back(), m));
  return seq;
}

Rational residual(const Rational& x, const BigInt& m) { return x * x - Rational(m); }

ContinuedFraction to_continued_fraction(const Rational& x) {
  if (x.sign() <= 0) throw InvalidArgument("continued fraction expansion requires x > 0");
  std::vector<BigInt> terms;
  BigInt p = x.num();
  BigInt q = x.den();
  while (q != 0) {
    BigInt a;
    BigInt r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    terms.push_back(a);
    p = q;
    q = r;
  }
  return ContinuedFraction(std::move(terms));
}

Rational from_continued_fraction(const ContinuedFraction& cf) {
  // h_k = a_k h_{k-1} + h_{k-2}, likewise k_k; start h_{-1} = 1, h_{-2} = 0.
  BigInt h_prev = 1, h_prev2 = 0;
  BigInt k_prev = 0, k_prev2 = 1;
  for (const BigInt& a : cf.terms()) {
    BigInt h = a * h_prev + h_prev2;
    BigInt k = a * k_prev + k_prev2;
    h_prev2 = std::move(h_prev);
    h_prev = std::move(h);
    k_prev2 = std::move(k_prev);
    k_prev = std::move(k);
  }
  return Rational(h_prev, k_prev);
}

Rational closed_form_iterate(const BigInt& a, const BigInt& b, std::int64_t m, unsigned n) {
  if (a <= 0 || b <= 0) throw InvalidArgument("closed_form_iterate requires a, b > 0");
  if (is_perfect_square(BigInt(static_cast<long>(m))))
    throw InvalidArgument("closed_form_iterate requires a non-square m");
  const QuadraticFieldElement one(Rational(1), Rational(0), m);
  const QuadraticFieldElement root_m(Rational(0), Rational(1), m);
  const QuadraticFieldElement r =
      QuadraticFieldElement(Rational(a), -Rational(b), m) / QuadraticFieldElement(Rational(a), Rational(b), m);
  const QuadraticFieldElement power = r.power_2k(n);
  const QuadraticFieldElement denom = one - power;
  if (denom.a().is_zero() && denom.b().is_zero())
    throw DivisionByZero("closed_form_iterate: r^(2^n) = 1");
  const QuadraticFieldElement z = root_m * (one + power) / denom;
  if (!z.b().is_zero()) throw Error("closed_form_iterate: nonzero sqrt(m) component " + z.b().to_string());
  return z.a();
}

}  // namespace dlab::exact
