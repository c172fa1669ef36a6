/// @file families.hpp
/// Probe matrices: rank-one idempotents, the determinant-one probes
/// c P + 2 (I - P), the unitary probes alpha P + beta (I - P), and the
/// n^2-element spanning bases of determinant +1 and -1.
#pragma once

#include <string>
#include <vector>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

/// P = x y^t with y^t x = 1.
template <class S>
struct RankOneIdem {
  std::vector<S> x;
  std::vector<S> y;

  /// BadIdempotent when y^t x != 1 or sizes differ.
  void validate(double tol = 0.0) const;
  Matrix<S> matrix() const;
};

/// (1/2)^{n-1} P + 2 (I - P); spectrum {(1/2)^{n-1}, 2 (n-1 times)}.
template <class S>
Matrix<S> make_E(const RankOneIdem<S>& p);

/// The special eigenvalue (1/2)^{n-1} of make_E.
Rational e_small(std::size_t n);

struct EsParams {
  Complex alpha;
  Complex beta;
};

/// Reasons the unit scalars fail the probe conditions (empty when valid):
/// alpha^n != 1, alpha beta^{n-1} = 1, conj{alpha, beta} != {alpha, beta}.
std::vector<std::string> es_condition_failures(const EsParams& p, std::size_t n, double tol = 1e-9);

/// beta = e^{2 pi i / p} for the smallest prime p >= 7 not dividing n(n-1)(n-2),
/// alpha = beta^{1-n}.
EsParams default_es_params(std::size_t n);

/// alpha P + beta (I - P) for a rank-one orthogonal projection P.
/// BadParameters lists failed conditions; BadIdempotent if P is not a rank-one projection.
MatC make_Es(const MatC& p, const EsParams& params, double tol = 1e-9);

/// Orthogonal projection onto the span of a nonzero vector.
MatC projection_onto(const std::vector<Complex>& v);

enum class BasisKind { B, Bprime };

/// n diagonal probes plus n(n-1) corner probes with a single off-diagonal 1.
std::vector<MatQ> build_basis(BasisKind kind, std::size_t n);

/// G_jk = tr(M_j M_k).
template <class S>
Matrix<S> trace_gram(const std::vector<Matrix<S>>& ms) {
  Matrix<S> g(ms.size(), ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j)
    for (std::size_t k = j; k < ms.size(); ++k) {
      g(j, k) = (ms[j] * ms[k]).trace();
      g(k, j) = g(j, k);
    }
  return g;
}

}  // namespace locaut
