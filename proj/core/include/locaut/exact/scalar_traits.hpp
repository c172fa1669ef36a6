/// @file scalar_traits.hpp
/// Uniform access to the three coefficient regimes.
#pragma once

#include <cmath>
#include <string_view>

#include "locaut/exact/rational.hpp"

namespace locaut {

enum class Regime { QR, QC, C64 };

std::string_view regime_name(Regime r);
Regime parse_regime(std::string_view text);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Regime regime = Regime::QR;
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x, double = 0.0) { return x.is_zero(); }
  static Rational conj(const Rational& x) { return x; }
  static Complex to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
  static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr Regime regime = Regime::QC;
  static constexpr bool exact = true;
  static GaussRational zero() { return GaussRational(0); }
  static GaussRational one() { return GaussRational(1); }
  static bool is_zero(const GaussRational& x, double = 0.0) { return x.is_zero(); }
  static GaussRational conj(const GaussRational& x) { return x.conj(); }
  static Complex to_complex(const GaussRational& x) { return x.to_complex(); }
  static double magnitude(const GaussRational& x) { return std::abs(x.to_complex()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr Regime regime = Regime::C64;
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

/// Widening conversions QR -> QC -> C64.
template <class To, class From>
To convert_scalar(const From& x);

template <>
inline Rational convert_scalar<Rational, Rational>(const Rational& x) { return x; }
template <>
inline GaussRational convert_scalar<GaussRational, Rational>(const Rational& x) { return GaussRational(x); }
template <>
inline GaussRational convert_scalar<GaussRational, GaussRational>(const GaussRational& x) { return x; }
template <>
inline Complex convert_scalar<Complex, Rational>(const Rational& x) { return {x.to_double(), 0.0}; }
template <>
inline Complex convert_scalar<Complex, GaussRational>(const GaussRational& x) { return x.to_complex(); }
template <>
inline Complex convert_scalar<Complex, Complex>(const Complex& x) { return x; }

}  // namespace locaut
