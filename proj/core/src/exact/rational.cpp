#include "locaut/exact/rational.hpp"

#include <cctype>

#include "locaut/error.hpp"

namespace locaut {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorCode::FileFormat, "empty integer in rational '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorCode::FileFormat, "bad rational '" + std::string(whole) + "'");
  for (std::size_t k = start; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw Error(ErrorCode::FileFormat, "bad rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::ZeroInput, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  return Rational(num, den);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::ZeroInput, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

GaussRational GaussRational::inverse() const {
  Rational d = norm2();
  if (d.is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of zero");
  return {re_ / d, -im_ / d};
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  // Real factors are common in exact products; skip the cross terms.
  if (o.im_.is_zero()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  if (im_.is_zero()) {
    im_ = re_ * o.im_;
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string im_part = im_.str() + "i";
  if (re_.is_zero()) return im_part;
  if (im_.sign() > 0) return re_.str() + "+" + im_part;
  return re_.str() + im_part;
}

GaussRational pow(const GaussRational& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  GaussRational result(1);
  GaussRational b = base;
  auto e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace locaut

std::size_t std::hash<locaut::Rational>::operator()(const locaut::Rational& r) const noexcept {
  std::size_t h1 = std::hash<std::string>{}(r.num().get_str(16));
  std::size_t h2 = std::hash<std::string>{}(r.den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}
