/// @file oracles.hpp
/// Independent reference computations used to freeze expected values.
/// They avoid the library's elimination code on purpose.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "locaut/exact/rational.hpp"
#include "locaut/matrix/matrix.hpp"

namespace oracle {

/// Leibniz expansion; only for small n.
template <class S>
S leibniz_det(const locaut::Matrix<S>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  S total = locaut::ScalarTraits<S>::zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    S term = locaut::ScalarTraits<S>::one();
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Entry-by-entry triple loop, no denominator clearing.
template <class S>
locaut::Matrix<S> naive_product(const locaut::Matrix<S>& a, const locaut::Matrix<S>& b) {
  locaut::Matrix<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      S s = locaut::ScalarTraits<S>::zero();
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

/// adj(A) / det(A) with Leibniz cofactors; only for small n.
template <class S>
locaut::Matrix<S> cofactor_inverse(const locaut::Matrix<S>& a) {
  const std::size_t n = a.rows();
  const S d = leibniz_det(a);
  locaut::Matrix<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      locaut::Matrix<S> minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c)
          if (c != i) minor(mr, mc++) = a(r, c);
        ++mr;
      }
      S cof = n == 1 ? locaut::ScalarTraits<S>::one() : leibniz_det(minor);
      inv(i, j) = ((i + j) % 2 ? -cof : cof) / d;
    }
  return inv;
}

/// Characteristic polynomial coefficients by Lagrange interpolation of
/// det(xI - A) at x = 0..n.
inline std::vector<locaut::Rational> interpolated_charpoly(const locaut::MatQ& a) {
  using locaut::Rational;
  const std::size_t n = a.rows();
  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k <= n; ++k) {
    Rational x(static_cast<long>(k));
    xs.push_back(x);
    ys.push_back(leibniz_det(locaut::MatQ::identity(n) * x - a));
  }
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= xs[j] * basis[k];
      }
      basis = next;
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k <= n; ++k) coeffs[k] += ys[i] * basis[k] / denom;
  }
  return coeffs;
}

/// Rank by brute-force search for the largest nonsingular square minor.
template <class S>
std::size_t minor_rank(const locaut::Matrix<S>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  for (std::size_t k = std::min(r, c); k > 0; --k) {
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        locaut::Matrix<S> sub(k, k);
        std::size_t a = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          std::size_t b = 0;
          for (std::size_t j = 0; j < c; ++j) {
            if (!cs[j]) continue;
            sub(a, b++) = m(i, j);
          }
          ++a;
        }
        if (!locaut::ScalarTraits<S>::is_zero(leibniz_det(sub), 0.0)) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

/// Prime exponents of a nonzero rational by trial division (small inputs only).
inline std::map<long, long> trial_exponents(const locaut::Rational& x) {
  std::map<long, long> out;
  auto run = [&](mpz_class v, long sign) {
    v = abs(v);
    for (long p = 2; v > 1; ++p) {
      while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        v /= p;
        out[p] += sign;
      }
    }
  };
  run(x.num(), 1);
  run(x.den(), -1);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Exponent matrix (one row per value) over the union of primes involved.
inline locaut::MatQ exponent_matrix(const std::vector<locaut::Rational>& xs) {
  std::vector<std::map<long, long>> rows;
  std::map<long, std::size_t> col;
  for (const auto& x : xs) {
    rows.push_back(trial_exponents(x));
    for (const auto& [p, e] : rows.back()) col.emplace(p, 0);
  }
  std::size_t k = 0;
  for (auto& [p, c] : col) c = k++;
  locaut::MatQ m(xs.size(), std::max<std::size_t>(k, 1));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [p, e] : rows[i]) m(i, col[p]) = locaut::Rational(e);
  return m;
}

}  // namespace oracle
