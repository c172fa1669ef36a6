#include "locaut/matrix/polynomial.hpp"

#include <algorithm>
#include <optional>

#include "locaut/exact/factored.hpp"

namespace locaut {

template <class S>
Poly<S> charpoly(const Matrix<S>& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "charpoly of non-square matrix");
  const std::size_t n = a.rows();
  Poly<S> c(n + 1, ScalarTraits<S>::zero());
  c[n] = ScalarTraits<S>::one();
  Matrix<S> m(n, n);
  const Matrix<S> id = Matrix<S>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + id * c[n - k + 1];
    S t = (a * m).trace();
    c[n - k] = -t / S(static_cast<long>(k));
  }
  return c;
}

template <class S>
Poly<S> poly_from_roots(const std::vector<S>& roots) {
  Poly<S> p{ScalarTraits<S>::one()};
  for (const S& r : roots) {
    Poly<S> q(p.size() + 1, ScalarTraits<S>::zero());
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = std::move(q);
  }
  return p;
}

template <class S>
S poly_eval(const Poly<S>& p, const S& x) {
  S acc = ScalarTraits<S>::zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

std::vector<mpz_class> divisors(const mpz_class& m) {
  std::vector<mpz_class> out{1};
  if (m <= 1) return out;
  for (const auto& [p, k] : factor_integer(m)) {
    std::size_t cur = out.size();
    mpz_class pk = 1;
    for (unsigned long e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

Poly<Rational> deflate(const Poly<Rational>& p, const Rational& r) {
  // Synthetic division by (x - r); the remainder is known to be zero.
  const std::size_t d = p.size() - 1;
  Poly<Rational> q(d);
  Rational carry(0);
  for (std::size_t k = d; k >= 1; --k) {
    carry = carry * r + p[k];
    q[k - 1] = carry;
  }
  return q;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly<Rational>& input) {
  Poly<Rational> p = input;
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  std::vector<Rational> roots;
  while (p.size() > 1 && p[0].is_zero()) {
    roots.emplace_back(0);
    p.erase(p.begin());
  }
  if (p.size() > 1) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class lead = abs(mpz_class((p.back() * Rational(l)).num()));
    mpz_class tail = abs(mpz_class((p.front() * Rational(l)).num()));
    auto num_divs = divisors(tail);
    auto den_divs = divisors(lead);
    std::vector<Rational> candidates;
    for (const auto& a : num_divs)
      for (const auto& b : den_divs) {
        candidates.emplace_back(a, b);
        candidates.emplace_back(mpz_class(-a), b);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      while (p.size() > 1 && poly_eval(p, r).is_zero()) {
        roots.push_back(r);
        p = deflate(p, r);
      }
      if (p.size() <= 1) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<std::vector<Rational>> rational_spectrum(const MatQ& a) {
  auto roots = rational_roots(charpoly(a));
  if (roots.size() != a.rows()) return std::nullopt;
  return roots;
}

template Poly<Rational> charpoly<Rational>(const MatQ&);
template Poly<GaussRational> charpoly<GaussRational>(const MatG&);
template Poly<Rational> poly_from_roots<Rational>(const std::vector<Rational>&);
template Poly<GaussRational> poly_from_roots<GaussRational>(const std::vector<GaussRational>&);
template Rational poly_eval<Rational>(const Poly<Rational>&, const Rational&);
template GaussRational poly_eval<GaussRational>(const Poly<GaussRational>&, const GaussRational&);

}  // namespace locaut
