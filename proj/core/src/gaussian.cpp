#include "dlab/gaussian.hpp"

#include "dlab/error.hpp"

namespace dlab {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  exact::Rational re = re_ * o.re_ - im_ * o.im_;
  exact::Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const exact::Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InvalidArgument("empty Gaussian rational");
  try {
    if (s.back() != 'i') return {exact::Rational::parse(s)};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    const std::string real_text = split == std::string::npos ? "" : body.substr(0, split);
    std::string imag_text = split == std::string::npos ? body : body.substr(split);
    if (imag_text.empty() || imag_text == "+") imag_text = "1";
    if (imag_text == "-") imag_text = "-1";
    exact::Rational re = real_text.empty() ? exact::Rational(0) : exact::Rational::parse(real_text);
    return {std::move(re), exact::Rational::parse(imag_text)};
  } catch (const InvalidArgument&) {
    throw InvalidArgument("malformed Gaussian rational '" + s + "'");
  }
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag;
  if (im_ == exact::Rational(1))
    imag = "i";
  else if (im_ == exact::Rational(-1))
    imag = "-i";
  else
    imag = im_.to_string() + "i";
  if (re_.is_zero()) return imag;
  return re_.to_string() + (im_.sign() > 0 ? "+" : "") + imag;
}

}  // namespace dlab
