// Exact products without per-term canonicalization: rows of a and columns of
// b are cleared to integers, the dot products run in mpz, and each entry is
// reduced once.
#include <gmpxx.h>

#include "locaut/matrix/matrix.hpp"

namespace locaut {

namespace {

struct Cleared {
  std::vector<mpz_class> re, im;  // im stays empty for real input
  std::vector<mpz_class> den;     // one per row of a, or per column of b
};

template <class S, class DenOf, class Fill>
Cleared clear(const Matrix<S>& m, bool by_rows, DenOf den_of, Fill fill) {
  Cleared c;
  const std::size_t lines = by_rows ? m.rows() : m.cols(), len = by_rows ? m.cols() : m.rows();
  c.den.assign(lines, mpz_class(1));
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t k = 0; k < len; ++k) den_of(c.den[l], by_rows ? m(l, k) : m(k, l));
  c.re.resize(lines * len);
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t k = 0; k < len; ++k) fill(c, l * len + k, by_rows ? m(l, k) : m(k, l), c.den[l]);
  return c;
}

void lcm_into(mpz_class& acc, const Rational& x) { mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.value().get_den_mpz_t()); }

void scaled_num(mpz_class& out, const Rational& x, const mpz_class& den) {
  mpz_divexact(out.get_mpz_t(), den.get_mpz_t(), x.value().get_den_mpz_t());
  out *= x.value().get_num();
}

}  // namespace

Matrix<Rational> exact_product(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  auto fill = [](Cleared& c, std::size_t at, const Rational& x, const mpz_class& den) { scaled_num(c.re[at], x, den); };
  Cleared ca = clear(a, true, lcm_into, fill), cb = clear(b, false, lcm_into, fill);
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  Matrix<Rational> c(n, p);
  mpz_class s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      s = 0;
      for (std::size_t k = 0; k < m; ++k)
        mpz_addmul(s.get_mpz_t(), ca.re[i * m + k].get_mpz_t(), cb.re[j * m + k].get_mpz_t());
      if (s != 0) c(i, j) = Rational(s, ca.den[i] * cb.den[j]);
    }
  }
  return c;
}

Matrix<GaussRational> exact_product(const Matrix<GaussRational>& a, const Matrix<GaussRational>& b) {
  auto den_of = [](mpz_class& acc, const GaussRational& x) {
    lcm_into(acc, x.re());
    lcm_into(acc, x.im());
  };
  auto fill = [](Cleared& c, std::size_t at, const GaussRational& x, const mpz_class& den) {
    if (c.im.size() < c.re.size()) c.im.resize(c.re.size());
    scaled_num(c.re[at], x.re(), den);
    scaled_num(c.im[at], x.im(), den);
  };
  Cleared ca = clear(a, true, den_of, fill), cb = clear(b, false, den_of, fill);
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  Matrix<GaussRational> c(n, p);
  mpz_class re, im;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      re = 0;
      im = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const mpz_class &ar = ca.re[i * m + k], &ai = ca.im[i * m + k];
        const mpz_class &br = cb.re[j * m + k], &bi = cb.im[j * m + k];
        mpz_addmul(re.get_mpz_t(), ar.get_mpz_t(), br.get_mpz_t());
        mpz_submul(re.get_mpz_t(), ai.get_mpz_t(), bi.get_mpz_t());
        mpz_addmul(im.get_mpz_t(), ar.get_mpz_t(), bi.get_mpz_t());
        mpz_addmul(im.get_mpz_t(), ai.get_mpz_t(), br.get_mpz_t());
      }
      const mpz_class den = ca.den[i] * cb.den[j];
      c(i, j) = GaussRational(Rational(re, den), Rational(im, den));
    }
  }
  return c;
}

}  // namespace locaut
