/// @file similarity.hpp
/// Simultaneous similarity: find one invertible S with S A_i = B_i S for all i.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

enum class SimStatus { Found, NoSolution, Inconclusive };

std::string_view sim_status_name(SimStatus s);

template <class S>
struct SimilarityResult {
  SimStatus status = SimStatus::Inconclusive;
  Matrix<S> s;             // valid when Found
  std::size_t dimension = 0;  // dimension of the intertwiner space
  std::string note;
};

struct SimilarityOptions {
  std::size_t random_attempts = 8;
  long coefficient_bound = 16;
  /// The full grid {0..n}^d is swept when (n+1)^d stays below this; a sweep
  /// with no invertible point certifies that every intertwiner is singular
  /// (det is a polynomial of degree at most n in each coordinate).
  std::size_t grid_limit = 4096;
  double tol = 1e-9;     // Complex regime: nullspace and verification tolerance
  bool unitary = false;  // Complex regime: return the unitary polar factor
};

template <class S>
using MatrixPairs = std::vector<std::pair<Matrix<S>, Matrix<S>>>;

/// Basis of {S : S A_i = B_i S} (exact regimes).
template <class S>
std::vector<Matrix<S>> intertwiner_basis(const MatrixPairs<S>& pairs);

template <class S>
SimilarityResult<S> simultaneous_similarity(const MatrixPairs<S>& pairs, std::uint64_t seed,
                                            const SimilarityOptions& opts = {});

SimilarityResult<Complex> simultaneous_similarity(const MatrixPairs<Complex>& pairs, std::uint64_t seed,
                                                  const SimilarityOptions& opts = {});

}  // namespace locaut
