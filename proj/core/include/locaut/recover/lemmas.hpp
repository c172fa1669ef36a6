/// @file lemmas.hpp
/// Small linear-algebra facts the recovery engines lean on, exposed so they
/// can be tested on their own.
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "locaut/matrix/families.hpp"
#include "locaut/matrix/matrix.hpp"

namespace locaut {

template <class S>
struct GloballyDependent {
  S lambda;  // A = lambda B
};

template <class S>
struct Independent {
  std::vector<S> x;  // A x_sigma and B x_sigma are independent
};

template <class S>
using LindepResult = std::variant<GloballyDependent<S>, Independent<S>>;

/// Probes Ax_sigma, Bx_sigma on the standard basis, the sums e_i + e_j and
/// `probes` random vectors. If every probe is dependent, A = lambda B is
/// solved and verified; should the verification fail, a witness is searched
/// among further probes (one always exists then).
/// Exact regimes only. A and B must be invertible (SingularMatrix).
template <class S>
LindepResult<S> lindep_detector(const Matrix<S>& a, const Matrix<S>& b, std::size_t probes, std::uint64_t seed,
                                Sigma sigma = Sigma::Id);

/// Functionals are row vectors; phi1(x) = r1 x and phi2(x) = r2 x_sigma.
/// With Ker phi1 = Ker phi2 this returns c = phi2(u) at a u with phi1(u) = 1,
/// after verifying r2 = c sigma(r1). nullopt when the kernels differ.
template <class S>
std::optional<S> kernel_equal_constant(const std::vector<S>& r1, const std::vector<S>& r2, Sigma sigma = Sigma::Id);

/// A rank-one idempotent P = x y^t with tr(P C) = target. x is a probe vector
/// that is not an eigenvector of C and y = x / (x^t x) + v with v^t x = 0.
/// nullopt exactly when C is a scalar matrix.
template <class S>
std::optional<RankOneIdem<S>> idempotent_with_trace(const Matrix<S>& c, const S& target, std::uint64_t seed);

}  // namespace locaut
