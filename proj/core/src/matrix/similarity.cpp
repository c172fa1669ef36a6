#include "locaut/matrix/similarity.hpp"

#include <cmath>

#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"

namespace locaut {

std::string_view sim_status_name(SimStatus s) {
  switch (s) {
    case SimStatus::Found: return "Found";
    case SimStatus::NoSolution: return "NoSolution";
    case SimStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// Row-major vec(S); one row per entry (i, j) of S A - B S per pair.
template <class S>
Matrix<S> intertwining_system(const MatrixPairs<S>& pairs, std::size_t n) {
  Matrix<S> sys(pairs.size() * n * n, n * n);
  std::size_t row = 0;
  for (const auto& [a, b] : pairs) {
    if (a.rows() != n || b.rows() != n || !a.is_square() || !b.is_square())
      throw Error(ErrorCode::DimensionMismatch, "similarity pairs must be n x n");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, i * n + k) += a(k, j);
          sys(row, k * n + j) -= b(i, k);
        }
      }
  }
  return sys;
}

template <class S>
Matrix<S> unvec(const std::vector<S>& v, std::size_t n) {
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

template <class S>
bool verify_exact(const MatrixPairs<S>& pairs, const Matrix<S>& s) {
  for (const auto& [a, b] : pairs)
    if (!(s * a == b * s)) return false;
  return true;
}

template <class S>
Matrix<S> combine(const std::vector<Matrix<S>>& basis, const std::vector<long>& coeffs) {
  Matrix<S> m(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coeffs[k] != 0) m += basis[k] * S(coeffs[k]);
  return m;
}

}  // namespace

template <class S>
std::vector<Matrix<S>> intertwiner_basis(const MatrixPairs<S>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::BadParameters, "no pairs");
  const std::size_t n = pairs[0].first.rows();
  std::vector<Matrix<S>> out;
  for (auto& v : nullspace(intertwining_system(pairs, n))) out.push_back(unvec(v, n));
  return out;
}

template <class S>
SimilarityResult<S> simultaneous_similarity(const MatrixPairs<S>& pairs, std::uint64_t seed,
                                            const SimilarityOptions& opts) {
  SimilarityResult<S> res;
  auto basis = intertwiner_basis(pairs);
  const std::size_t n = pairs[0].first.rows();
  res.dimension = basis.size();
  if (basis.empty()) {
    res.status = SimStatus::NoSolution;
    res.note = "intertwiner space is zero";
    return res;
  }
  auto accept = [&](Matrix<S> s, std::string note) {
    if (!verify_exact(pairs, s)) return false;
    res.status = SimStatus::Found;
    res.s = std::move(s);
    res.note = std::move(note);
    return true;
  };
  if (basis.size() == 1) {
    if (!ScalarTraits<S>::is_zero(det(basis[0])) && accept(basis[0], "one-dimensional intertwiner space")) return res;
    res.status = SimStatus::NoSolution;
    res.note = "one-dimensional intertwiner space spanned by a singular matrix";
    return res;
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < opts.random_attempts; ++t) {
    std::vector<long> c(basis.size());
    for (auto& x : c) x = rng.uniform_int(-opts.coefficient_bound, opts.coefficient_bound);
    Matrix<S> s = combine(basis, c);
    if (!ScalarTraits<S>::is_zero(det(s)) && accept(std::move(s), "random combination")) return res;
  }
  double grid_points = std::pow(static_cast<double>(n + 1), static_cast<double>(basis.size()));
  if (grid_points > static_cast<double>(opts.grid_limit)) {
    res.status = SimStatus::Inconclusive;
    res.note = "random search failed and the intertwiner space is too large for a certifying sweep";
    return res;
  }
  std::vector<long> c(basis.size(), 0);
  while (true) {
    Matrix<S> s = combine(basis, c);
    if (!ScalarTraits<S>::is_zero(det(s)) && accept(std::move(s), "grid sweep")) return res;
    std::size_t k = 0;
    while (k < c.size() && ++c[k] > static_cast<long>(n)) {
      c[k] = 0;
      ++k;
    }
    if (k == c.size()) break;
  }
  res.status = SimStatus::NoSolution;
  res.note = "determinant vanishes on the full grid {0..n}^d, so every intertwiner is singular";
  return res;
}

template std::vector<MatQ> intertwiner_basis<Rational>(const MatrixPairs<Rational>&);
template std::vector<MatG> intertwiner_basis<GaussRational>(const MatrixPairs<GaussRational>&);
template SimilarityResult<Rational> simultaneous_similarity<Rational>(const MatrixPairs<Rational>&, std::uint64_t,
                                                                      const SimilarityOptions&);
template SimilarityResult<GaussRational> simultaneous_similarity<GaussRational>(const MatrixPairs<GaussRational>&,
                                                                                std::uint64_t,
                                                                                const SimilarityOptions&);

SimilarityResult<Complex> simultaneous_similarity(const MatrixPairs<Complex>& pairs, std::uint64_t seed,
                                                  const SimilarityOptions& opts) {
  SimilarityResult<Complex> res;
  if (pairs.empty()) throw Error(ErrorCode::BadParameters, "no pairs");
  const std::size_t n = pairs[0].first.rows();
  auto null = numeric_nullspace(intertwining_system(pairs, n), opts.tol);
  res.dimension = null.size();
  if (null.empty()) {
    res.status = SimStatus::NoSolution;
    res.note = "intertwiner space is numerically zero";
    return res;
  }
  std::vector<MatC> basis;
  for (auto& v : null) basis.push_back(unvec(v, n));
  Rng rng(seed);
  double scale = 1.0;
  for (const auto& [a, b] : pairs) scale = std::max({scale, max_abs_diff(a, MatC(n, n)), max_abs_diff(b, MatC(n, n))});
  const double check_tol = std::max(opts.tol, 1e-12) * 10.0 * scale;
  for (std::size_t t = 0; t < std::max<std::size_t>(opts.random_attempts, 1); ++t) {
    MatC s(n, n);
    for (const auto& m : basis) s += m * Complex(rng.normal(), rng.normal());
    auto sv = singular_values(s);
    if (sv.back() <= 1e-6 * sv.front()) continue;
    if (opts.unitary) s = polar_unitary(s);
    MatC sinv = opts.unitary ? s.adjoint() : inverse(s);
    bool ok = true;
    for (const auto& [a, b] : pairs) ok = ok && max_abs_diff(s * a * sinv, b) <= check_tol;
    if (ok) {
      res.status = SimStatus::Found;
      res.s = std::move(s);
      res.note = opts.unitary ? "random combination, unitary polar factor" : "random combination";
      return res;
    }
  }
  if (basis.size() == 1) {
    res.status = SimStatus::NoSolution;
    res.note = "one-dimensional intertwiner space spanned by a singular matrix";
    return res;
  }
  res.status = SimStatus::Inconclusive;
  res.note = "no well-conditioned intertwiner found";
  return res;
}

}  // namespace locaut
