/// @file rational.hpp
/// Arbitrary-precision rationals (backed by GMP) and Gaussian rationals.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <complex>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace locaut {

/// Always in lowest terms with positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit by design
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  /// Accepts "p", "p/q" and optional leading sign.
  static Rational parse(std::string_view text);

  std::string str() const;
  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  Rational inverse() const;
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

/// Integer power; negative exponents invert (ZeroInput on 0^negative).
Rational pow(const Rational& base, long exponent);

/// Exact element of Q(i).
class GaussRational {
 public:
  GaussRational() = default;
  template <std::integral I>
  GaussRational(I v) : re_(v) {}  // NOLINT: implicit by design
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  GaussRational inverse() const;
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

  GaussRational& operator+=(const GaussRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussRational& operator-=(const GaussRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

GaussRational pow(const GaussRational& base, long exponent);

using Complex = std::complex<double>;

}  // namespace locaut

template <>
struct std::hash<locaut::Rational> {
  std::size_t operator()(const locaut::Rational& r) const noexcept;
};
