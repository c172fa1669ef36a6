/// @file factored.hpp
/// Nonzero reals of the form sign * prod p^e with rational exponents e.
/// Integer exponents give exactly the nonzero rationals; rational exponents
/// add the radicals needed for n-th roots and powers |x|^c.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locaut/exact/rational.hpp"

namespace locaut {

struct MpzLess {
  bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};

using PrimeExponents = std::map<mpz_class, Rational, MpzLess>;

class SignedFactored {
 public:
  SignedFactored() = default;  // the value 1
  SignedFactored(int sign, PrimeExponents exponents);

  static SignedFactored minus_one() { return SignedFactored(-1, {}); }

  int sign() const { return sign_; }
  const PrimeExponents& exponents() const { return exps_; }
  Rational exponent(const mpz_class& p) const;

  bool is_one() const { return sign_ > 0 && exps_.empty(); }
  bool is_positive() const { return sign_ > 0; }
  bool is_rational() const;  // all exponents integral

  /// Throws NotRepresentable when some exponent is not an integer.
  Rational to_rational() const;
  double to_double() const;
  double log_abs() const;

  SignedFactored abs() const { return SignedFactored(1, exps_); }
  SignedFactored inverse() const;
  /// sign^q needs q integral unless the value is positive (NotRepresentable).
  SignedFactored pow(const Rational& q) const;

  SignedFactored& operator*=(const SignedFactored& o);
  friend SignedFactored operator*(SignedFactored a, const SignedFactored& b) { return a *= b; }
  friend SignedFactored operator/(SignedFactored a, const SignedFactored& b) { return a *= b.inverse(); }
  friend bool operator==(const SignedFactored& a, const SignedFactored& b);

  /// Human-readable form such as "-2^3*3^(1/2)".
  std::string str() const;

 private:
  int sign_ = 1;
  PrimeExponents exps_;
};

/// Prime factorization of a nonzero rational. ZeroInput on 0.
SignedFactored factor(const Rational& q);

/// Factorization of a positive integer: prime -> multiplicity.
std::map<mpz_class, unsigned long, MpzLess> factor_integer(const mpz_class& n);

/// Returns q with |x| = |base|^q when the positive parts are related that way.
/// For base = 1 only x = 1 qualifies (q = 1 is returned).
std::optional<Rational> class_exponent(const SignedFactored& x, const SignedFactored& base);

/// The relation x ~ y: |x| = |y|^q for some nonzero rational q (1 ~ 1 only).
bool same_class(const SignedFactored& x, const SignedFactored& y);

}  // namespace locaut
