#include "locaut/matrix/families.hpp"

#include <cmath>
#include <numbers>

#include "locaut/error.hpp"
#include "locaut/matrix/linalg.hpp"

namespace locaut {

template <class S>
void RankOneIdem<S>::validate(double tol) const {
  if (x.size() != y.size() || x.empty()) throw Error(ErrorCode::BadIdempotent, "x and y must have equal nonzero length");
  S s = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < x.size(); ++i) s += y[i] * x[i];
  if (!ScalarTraits<S>::is_zero(s - ScalarTraits<S>::one(), tol)) throw Error(ErrorCode::BadIdempotent, "y^t x != 1");
}

template <class S>
Matrix<S> RankOneIdem<S>::matrix() const {
  Matrix<S> p(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) p(i, j) = x[i] * y[j];
  return p;
}

Rational e_small(std::size_t n) { return pow(Rational(1) / Rational(2), static_cast<long>(n) - 1); }

template <class S>
Matrix<S> make_E(const RankOneIdem<S>& p) {
  p.validate(1e-12);
  const std::size_t n = p.x.size();
  Matrix<S> pm = p.matrix();
  S small = convert_scalar<S, Rational>(e_small(n));
  S two = convert_scalar<S, Rational>(Rational(2));
  return pm * small + (Matrix<S>::identity(n) - pm) * two;
}

template struct RankOneIdem<Rational>;
template struct RankOneIdem<GaussRational>;
template struct RankOneIdem<Complex>;
template MatQ make_E<Rational>(const RankOneIdem<Rational>&);
template MatG make_E<GaussRational>(const RankOneIdem<GaussRational>&);
template MatC make_E<Complex>(const RankOneIdem<Complex>&);

std::vector<std::string> es_condition_failures(const EsParams& p, std::size_t n, double tol) {
  std::vector<std::string> out;
  if (std::abs(std::abs(p.alpha) - 1.0) > tol || std::abs(std::abs(p.beta) - 1.0) > tol)
    out.emplace_back("alpha and beta must have modulus 1");
  auto nn = static_cast<int>(n);
  if (std::abs(std::pow(p.alpha, nn) - 1.0) <= tol) out.emplace_back("alpha^n = 1");
  if (std::abs(p.alpha * std::pow(p.beta, nn - 1) - 1.0) > tol) out.emplace_back("alpha beta^(n-1) != 1");
  auto close = [&](Complex a, Complex b) { return std::abs(a - b) <= tol; };
  Complex ca = std::conj(p.alpha), cb = std::conj(p.beta);
  bool same_set = (close(ca, p.alpha) && close(cb, p.beta)) || (close(ca, p.beta) && close(cb, p.alpha)) ||
                  (close(ca, p.alpha) && close(cb, p.alpha) && close(p.alpha, p.beta)) ||
                  (close(ca, p.beta) && close(cb, p.beta) && close(p.alpha, p.beta));
  if (same_set) out.emplace_back("conjugate set equals {alpha, beta}");
  return out;
}

EsParams default_es_params(std::size_t n) {
  auto is_prime = [](std::size_t p) {
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  };
  std::size_t p = 7;
  while (!is_prime(p) || (n * (n - 1) * (n - 2)) % p == 0) ++p;
  Complex beta = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(p));
  Complex alpha = std::pow(beta, 1 - static_cast<int>(n));
  return {alpha, beta};
}

MatC projection_onto(const std::vector<Complex>& v) {
  double norm2 = 0.0;
  for (const auto& z : v) norm2 += std::norm(z);
  if (norm2 == 0.0) throw Error(ErrorCode::BadIdempotent, "projection onto the zero vector");
  MatC p(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) p(i, j) = v[i] * std::conj(v[j]) / norm2;
  return p;
}

MatC make_Es(const MatC& p, const EsParams& params, double tol) {
  const std::size_t n = p.rows();
  auto failures = es_condition_failures(params, n, tol);
  if (!failures.empty()) {
    std::string msg;
    for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::BadParameters, msg);
  }
  if (max_abs_diff(p * p, p) > tol || max_abs_diff(p.adjoint(), p) > tol || std::abs(p.trace() - 1.0) > tol)
    throw Error(ErrorCode::BadIdempotent, "P is not a rank-one orthogonal projection");
  return p * params.alpha + (MatC::identity(n) - p) * params.beta;
}

std::vector<MatQ> build_basis(BasisKind kind, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::BadParameters, "n must be at least 3");
  Rational small = e_small(n);
  if (kind == BasisKind::Bprime) small = -small;
  std::vector<MatQ> out;
  for (std::size_t i = 0; i < n; ++i) {
    MatQ d = MatQ::identity(n) * Rational(2);
    d(i, i) = small;
    out.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      MatQ m = MatQ::identity(n) * Rational(2);
      m(0, 0) = small;
      m(i, j) = Rational(1);
      out.push_back(std::move(m));
    }
  return out;
}

}  // namespace locaut
