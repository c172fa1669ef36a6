/// @file polynomial.hpp
/// Characteristic polynomials and exact rational root extraction.
#pragma once

#include <optional>
#include <vector>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

/// Coefficients from the constant term upwards.
template <class S>
using Poly = std::vector<S>;

/// det(xI - A) by the Faddeev-LeVerrier recursion (exact regimes).
template <class S>
Poly<S> charpoly(const Matrix<S>& a);

/// prod (x - r).
template <class S>
Poly<S> poly_from_roots(const std::vector<S>& roots);

template <class S>
S poly_eval(const Poly<S>& p, const S& x);

/// All rational roots with multiplicity, ascending.
std::vector<Rational> rational_roots(const Poly<Rational>& p);

/// The exact eigenvalue multiset of a rational matrix when its characteristic
/// polynomial splits over Q; nullopt otherwise.
std::optional<std::vector<Rational>> rational_spectrum(const MatQ& a);

/// charpoly(a) == prod (x - lambda_i).
template <class S>
bool has_spectrum(const Matrix<S>& a, const std::vector<S>& eigenvalues) {
  return charpoly(a) == poly_from_roots(eigenvalues);
}

}  // namespace locaut
