/// @file group.hpp
/// Group tags, regime-erased matrices and membership tests.
#pragma once

#include <string>
#include <variant>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

enum class Family { GL, SL, Un, SUn, SLminus };
enum class Field { R, C };

struct GroupTag {
  Family family = Family::SL;
  Field field = Field::R;
  std::size_t n = 3;

  /// Validates n >= 3 and the family/field combination (BadParameters).
  static GroupTag make(Family family, Field field, std::size_t n);
  /// Parses short names such as "sl-r-3", "gl-c-4", "u-3", "su-3".
  static GroupTag parse(std::string_view short_name);

  bool unitary() const { return family == Family::Un || family == Family::SUn; }
  bool has_scalar_part() const { return family == Family::GL || family == Family::Un; }
  std::string str() const;         // e.g. "SL(R,3)"
  std::string short_name() const;  // e.g. "sl-r-3"
  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

std::string_view family_name(Family f);
Family parse_family(std::string_view text);

using AnyMatrix = std::variant<MatQ, MatG, MatC>;
using AnyScalar = std::variant<Rational, GaussRational, Complex>;

Regime regime_of(const AnyMatrix& m);
std::size_t dim_of(const AnyMatrix& m);
Complex to_complex(const AnyScalar& s);
std::string scalar_str(const AnyScalar& s);

/// Widens a matrix into regime S; RegimeMismatch when that would narrow.
template <class S>
Matrix<S> as_regime(const AnyMatrix& m);

/// The wider of two regimes.
Regime join(Regime a, Regime b);
AnyMatrix promote(const AnyMatrix& m, Regime target);

AnyScalar det_any(const AnyMatrix& m);

AnyMatrix any_mul(const AnyMatrix& a, const AnyMatrix& b);
AnyMatrix any_inverse(const AnyMatrix& m);
AnyMatrix any_sigma(const AnyMatrix& m, Sigma s);
AnyMatrix any_transpose(const AnyMatrix& m);
/// q * m in the regime of m (Complex for C64).
AnyMatrix any_scale(const AnyMatrix& m, const Rational& q);
bool any_is_real(const AnyMatrix& m);
/// QC matrices with zero imaginary parts become QR; everything else is unchanged.
AnyMatrix narrow_real(const AnyMatrix& m);

/// Entrywise equality; exact for exact regimes, within tol otherwise.
bool approx_equal(const AnyMatrix& a, const AnyMatrix& b, double tol = 1e-9);
double any_max_abs_diff(const AnyMatrix& a, const AnyMatrix& b);

struct Membership {
  bool member = false;
  std::string witness;  // set on rejection
  AnyScalar det;        // of the input, once the shape checks pass
};

template <class S>
double unitarity_defect(const Matrix<S>& a) {
  auto p = a.adjoint() * a;
  return max_abs_diff(p, Matrix<S>::identity(a.rows()));
}

Membership member(const AnyMatrix& a, const GroupTag& g, double tol = 1e-9);

}  // namespace locaut
