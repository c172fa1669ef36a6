/// @file random.hpp
/// Seeded generators for test matrices. Every generator is deterministic
/// given the Rng state.
#pragma once

#include <cstdint>
#include <random>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

/// splitmix64 mix of a seed with two indices; used for per-pair sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long uniform_int(long lo, long hi);
  double uniform_real(double lo, double hi);
  double normal();
  bool coin() { return uniform_int(0, 1) == 1; }
  /// p/q with |p| <= num_max, 1 <= q <= den_max.
  Rational small_rational(long num_max = 3, long den_max = 3, bool nonzero = true);
  GaussRational small_gauss(long num_max = 2, long den_max = 2, bool nonzero = true);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Unit-lower * diagonal(det 1) * unit-upper with small entries.
MatQ random_sl_q(std::size_t n, Rng& rng);
MatQ random_gl_q(std::size_t n, Rng& rng);
/// Random element of GL with the given determinant.
MatQ random_gl_q_with_det(std::size_t n, const Rational& d, Rng& rng);
MatG random_sl_g(std::size_t n, Rng& rng);
MatG random_gl_g(std::size_t n, Rng& rng);
MatG random_gl_g_with_det(std::size_t n, const GaussRational& d, Rng& rng);

/// Exact unitary with Gaussian-rational entries (Pythagorean rotations,
/// Gaussian phases, permutations).
MatG random_exact_unitary(std::size_t n, Rng& rng);
MatG random_exact_special_unitary(std::size_t n, Rng& rng);
/// Haar-like unitary via QR of a complex Gaussian matrix.
MatC random_unitary(std::size_t n, Rng& rng);
MatC random_special_unitary(std::size_t n, Rng& rng);
/// Random unit vector in C^n.
std::vector<Complex> random_unit_vector(std::size_t n, Rng& rng);

}  // namespace locaut
