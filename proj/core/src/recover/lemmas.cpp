#include "locaut/recover/lemmas.hpp"

#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"

namespace locaut {

namespace {

template <class S>
std::vector<S> mat_vec(const Matrix<S>& a, const std::vector<S>& x) {
  std::vector<S> y(a.rows(), ScalarTraits<S>::zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class S>
std::vector<S> sigma_vec(std::vector<S> x, Sigma s) {
  if (s == Sigma::Conj)
    for (auto& v : x) v = ScalarTraits<S>::conj(v);
  return x;
}

// u, v dependent iff every 2x2 minor of [u v] vanishes.
template <class S>
bool dependent(const std::vector<S>& u, const std::vector<S>& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!(u[i] * v[j] - u[j] * v[i]).is_zero()) return false;
  return true;
}

template <class S>
S random_entry(Rng& rng) {
  if constexpr (std::is_same_v<S, Rational>) return rng.small_rational(3, 3, false);
  else return rng.small_gauss(2, 2, false);
}

template <class S>
std::vector<std::vector<S>> probe_vectors(std::size_t n, std::size_t randoms, Rng& rng) {
  std::vector<std::vector<S>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<S> e(n, ScalarTraits<S>::zero());
    e[i] = ScalarTraits<S>::one();
    out.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<S> e(n, ScalarTraits<S>::zero());
      e[i] = e[j] = ScalarTraits<S>::one();
      out.push_back(e);
    }
  for (std::size_t r = 0; r < randoms; ++r) {
    std::vector<S> x(n);
    for (auto& v : x) v = random_entry<S>(rng);
    out.push_back(x);
  }
  return out;
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  S s = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

template <class S>
LindepResult<S> lindep_detector(const Matrix<S>& a, const Matrix<S>& b, std::size_t probes, std::uint64_t seed,
                                Sigma sigma) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "lindep_detector needs square matrices of one size");
  if (det(a).is_zero() || det(b).is_zero()) throw Error(ErrorCode::SingularMatrix, "lindep_detector needs invertible A, B");
  const std::size_t n = a.rows();
  Rng rng(seed);
  for (const auto& x : probe_vectors<S>(n, probes, rng)) {
    auto xs = sigma_vec(x, sigma);
    if (!dependent(mat_vec(a, xs), mat_vec(b, xs))) return Independent<S>{x};
  }
  // Every probe was dependent: A = lambda B with lambda read off one entry.
  for (std::size_t k = 0; k < b.data().size(); ++k) {
    if (b.data()[k].is_zero()) continue;
    S lambda = a.data()[k] / b.data()[k];
    if (a == b * lambda) return GloballyDependent<S>{lambda};
    break;
  }
  // Not proportional, so some x separates them; widen the search.
  for (std::size_t round = 0; round < 64; ++round) {
    for (const auto& x : probe_vectors<S>(n, 16, rng)) {
      auto xs = sigma_vec(x, sigma);
      if (!dependent(mat_vec(a, xs), mat_vec(b, xs))) return Independent<S>{x};
    }
  }
  throw Error(ErrorCode::OracleFailure, "no separating vector found although A is not a multiple of B");
}

template <class S>
std::optional<S> kernel_equal_constant(const std::vector<S>& r1, const std::vector<S>& r2, Sigma sigma) {
  if (r1.size() != r2.size()) throw Error(ErrorCode::DimensionMismatch, "functionals of different length");
  std::size_t i = 0;
  while (i < r1.size() && r1[i].is_zero()) ++i;
  if (i == r1.size()) {
    for (const auto& v : r2)
      if (!v.is_zero()) return std::nullopt;
    return ScalarTraits<S>::one();  // both zero: any c works
  }
  std::vector<S> u(r1.size(), ScalarTraits<S>::zero());
  u[i] = r1[i].inverse();  // phi1(u) = 1
  S c = dot(r2, sigma_vec(u, sigma));
  auto r1s = sigma_vec(r1, sigma);
  for (std::size_t k = 0; k < r1.size(); ++k)
    if (!(r2[k] == c * r1s[k])) return std::nullopt;
  if (c.is_zero()) return std::nullopt;
  return c;
}

template <class S>
std::optional<RankOneIdem<S>> idempotent_with_trace(const Matrix<S>& c, const S& target, std::uint64_t seed) {
  if (!c.is_square()) throw Error(ErrorCode::DimensionMismatch, "idempotent_with_trace needs a square matrix");
  if (is_scalar_matrix(c)) return std::nullopt;
  const std::size_t n = c.rows();
  Rng rng(seed);
  for (std::size_t round = 0; round < 64; ++round) {
    for (const auto& x : probe_vectors<S>(n, 8, rng)) {
      S xx = dot(x, x);
      if (xx.is_zero()) continue;
      auto cx = mat_vec(c, x);
      if (dependent(x, cx)) continue;  // eigenvector
      // z: component of Cx orthogonal to x; then y^t C x = x^t C x / x^t x + v^t z.
      S base = dot(x, cx) / xx;
      std::vector<S> z(n);
      for (std::size_t k = 0; k < n; ++k) z[k] = cx[k] - base * x[k];
      Matrix<S> sys(2, n);
      for (std::size_t k = 0; k < n; ++k) {
        sys(0, k) = x[k];
        sys(1, k) = z[k];
      }
      auto v = solve(sys, std::vector<S>{ScalarTraits<S>::zero(), target - base});
      if (!v) continue;
      RankOneIdem<S> p;
      p.x = x;
      p.y.resize(n);
      for (std::size_t k = 0; k < n; ++k) p.y[k] = x[k] / xx + (*v)[k];
      return p;
    }
  }
  throw Error(ErrorCode::OracleFailure, "no non-eigenvector probe found for a non-scalar matrix");
}

template LindepResult<Rational> lindep_detector(const MatQ&, const MatQ&, std::size_t, std::uint64_t, Sigma);
template LindepResult<GaussRational> lindep_detector(const MatG&, const MatG&, std::size_t, std::uint64_t, Sigma);
template std::optional<Rational> kernel_equal_constant(const std::vector<Rational>&, const std::vector<Rational>&,
                                                       Sigma);
template std::optional<GaussRational> kernel_equal_constant(const std::vector<GaussRational>&,
                                                            const std::vector<GaussRational>&, Sigma);
template std::optional<RankOneIdem<Rational>> idempotent_with_trace(const MatQ&, const Rational&, std::uint64_t);
template std::optional<RankOneIdem<GaussRational>> idempotent_with_trace(const MatG&, const GaussRational&,
                                                                        std::uint64_t);

}  // namespace locaut
