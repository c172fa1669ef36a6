/// @file scaled.hpp
/// An exact matrix times an exact real scale that may be irrational, such as
/// 3^(1/3) * B. Scaled values arise as images under GL characters with
/// fractional exponents.
#pragma once

#include <optional>

#include "locaut/exact/factored.hpp"
#include "locaut/matrix/group.hpp"

namespace locaut {

struct ScaledMatrix {
  SignedFactored scale;  // 1 unless the value is irrational
  AnyMatrix m;

  ScaledMatrix() = default;
  ScaledMatrix(AnyMatrix mat) : m(std::move(mat)) {}  // NOLINT: plain matrices convert implicitly
  template <class S>
  ScaledMatrix(Matrix<S> mat) : m(std::move(mat)) {}  // NOLINT

  /// Folds rational scales into the matrix, and any scale into a C64 matrix.
  static ScaledMatrix make(const SignedFactored& s, AnyMatrix mat);

  bool is_plain() const { return scale.is_one(); }
  /// NotRepresentable when the scale is irrational.
  const AnyMatrix& value() const;
  /// The value as floating point.
  MatC numeric() const;
  std::size_t dim() const { return dim_of(m); }
};

bool scaled_equal(const ScaledMatrix& a, const ScaledMatrix& b, double tol = 1e-9);

/// det(scale * m) as an exact real; nullopt when it is not real or not exact.
std::optional<SignedFactored> real_det(const ScaledMatrix& a);

Membership member(const ScaledMatrix& a, const GroupTag& g, double tol = 1e-9);

}  // namespace locaut
