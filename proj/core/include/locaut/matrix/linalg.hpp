/// @file linalg.hpp
/// Exact elimination over Q and Q(i); floating-point routines for Complex.
#pragma once

#include <optional>
#include <vector>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

template <class S>
struct RrefResult {
  Matrix<S> reduced;
  std::vector<std::size_t> pivots;
};

// Exact regimes (S = Rational or GaussRational).
template <class S>
RrefResult<S> rref(Matrix<S> m);
template <class S>
std::size_t rank(const Matrix<S>& m);
/// Basis of {x : m x = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m);
/// Some solution of a x = b, or nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& a, const std::vector<S>& b);
/// Fraction-free (Bareiss) elimination for Rational, plain elimination for Q(i).
template <class S>
S det(const Matrix<S>& m);
/// Throws SingularMatrix.
template <class S>
Matrix<S> inverse(const Matrix<S>& m);

// Complex regime.
Complex det(const MatC& m);
/// Throws SingularMatrix when |det| <= tol.
MatC inverse(const MatC& m, double tol = 1e-12);
std::size_t numeric_rank(const MatC& m, double rel_tol = 1e-9);
/// Right singular vectors whose singular values fall below rel_tol * sigma_max.
std::vector<std::vector<Complex>> numeric_nullspace(const MatC& m, double rel_tol = 1e-9);
std::vector<double> singular_values(const MatC& m);
/// Unitary factor U of the polar decomposition m = U H.
MatC polar_unitary(const MatC& m);
std::vector<Complex> eigenvalues(const MatC& m);
/// Thin QR of a square complex matrix; returns the unitary factor with
/// diagonal phases of R made positive.
MatC qr_unitary(const MatC& m);

}  // namespace locaut
