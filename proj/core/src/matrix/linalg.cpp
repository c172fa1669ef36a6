#include "locaut/matrix/linalg.hpp"

#include <type_traits>
#include <utility>

namespace locaut {

template <class S>
RrefResult<S> rref(Matrix<S> m) {
  using T = ScalarTraits<S>;
  RrefResult<S> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && T::is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    S inv = S(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || T::is_zero(m(i, col))) continue;
      S f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return rref(m).pivots.size();
}

template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m) {
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(m.cols(), ScalarTraits<S>::zero());
    v[free] = ScalarTraits<S>::one();
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& a, const std::vector<S>& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs size");
  Matrix<S> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto rr = rref(std::move(aug));
  if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
  std::vector<S> x(a.cols(), ScalarTraits<S>::zero());
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = rr.reduced(r, a.cols());
  return x;
}

namespace {

// Fraction-free elimination runs over Z or Z[i] after clearing denominators.
struct GaussInt {
  mpz_class re, im;
};

bool ring_zero(const mpz_class& x) { return x == 0; }
bool ring_zero(const GaussInt& x) { return x.re == 0 && x.im == 0; }

// out = (a b - c d) / e, the division being exact.
void cross(mpz_class& out, const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d,
           const mpz_class& e) {
  mpz_class t = a * b;
  mpz_submul(t.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  mpz_divexact(out.get_mpz_t(), t.get_mpz_t(), e.get_mpz_t());
}

void cross(GaussInt& out, const GaussInt& a, const GaussInt& b, const GaussInt& c, const GaussInt& d,
           const GaussInt& e) {
  mpz_class re = a.re * b.re - a.im * b.im - c.re * d.re + c.im * d.im;
  mpz_class im = a.re * b.im + a.im * b.re - c.re * d.im - c.im * d.re;
  if (e.im == 0) {
    mpz_divexact(out.re.get_mpz_t(), re.get_mpz_t(), e.re.get_mpz_t());
    mpz_divexact(out.im.get_mpz_t(), im.get_mpz_t(), e.re.get_mpz_t());
    return;
  }
  mpz_class n = e.re * e.re + e.im * e.im;
  mpz_class r2 = re * e.re + im * e.im, i2 = im * e.re - re * e.im;
  mpz_divexact(out.re.get_mpz_t(), r2.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(out.im.get_mpz_t(), i2.get_mpz_t(), n.get_mpz_t());
}

struct Cleared {
  std::vector<std::vector<mpz_class>> q;
  std::vector<std::vector<GaussInt>> g;
  std::vector<mpz_class> row_scale;
};

void lcm_den(mpz_class& l, const Rational& x) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t()); }

mpz_class lift(const Rational& x, const mpz_class& l) { return x.value().get_num() * (l / x.value().get_den()); }

// Row i of the result is l_i times row i of m.
std::vector<std::vector<mpz_class>> clear_rows(const MatQ& m, std::vector<mpz_class>& scale) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  scale.assign(m.rows(), mpz_class(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) lcm_den(scale[i], m(i, j));
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = lift(m(i, j), scale[i]);
  }
  return a;
}

std::vector<std::vector<GaussInt>> clear_rows(const MatG& m, std::vector<mpz_class>& scale) {
  std::vector<std::vector<GaussInt>> a(m.rows(), std::vector<GaussInt>(m.cols()));
  scale.assign(m.rows(), mpz_class(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      lcm_den(scale[i], m(i, j).re());
      lcm_den(scale[i], m(i, j).im());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = {lift(m(i, j).re(), scale[i]), lift(m(i, j).im(), scale[i])};
  }
  return a;
}

template <class R>
R ring_one() {
  if constexpr (std::is_same_v<R, mpz_class>) return mpz_class(1);
  else return GaussInt{1, 0};
}

// Bareiss; returns the determinant of the integer matrix.
template <class R>
R bareiss_det(std::vector<std::vector<R>> a) {
  const std::size_t n = a.size();
  bool flip = false;
  R prev = ring_one<R>();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring_zero(a[k][k])) {
      std::size_t p = k + 1;
      while (p < n && ring_zero(a[p][k])) ++p;
      if (p == n) return R{};
      std::swap(a[p], a[k]);
      flip = !flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) cross(a[i][j], a[i][j], a[k][k], a[i][k], a[k][j], prev);
    prev = a[k][k];
  }
  R d = a[n - 1][n - 1];
  if (flip) {
    if constexpr (std::is_same_v<R, mpz_class>) d = -d;
    else d = {-d.re, -d.im};
  }
  return d;
}

// Fraction-free Gauss-Jordan on [a | I]. On return the left block is d I and
// the right block is d a^-1; returns d, or zero when a is singular.
template <class R>
R bareiss_inverse(std::vector<std::vector<R>> a, std::vector<std::vector<R>>& right) {
  const std::size_t n = a.size();
  for (auto& row : a) row.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) a[i][n + i] = ring_one<R>();
  R prev = ring_one<R>();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && ring_zero(a[p][k])) ++p;
    if (p == n) return R{};
    std::swap(a[p], a[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (j != k) cross(a[i][j], a[i][j], a[k][k], a[i][k], a[k][j], prev);
      a[i][k] = R{};
    }
    prev = a[k][k];
  }
  right.assign(n, std::vector<R>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) right[i][j] = std::move(a[i][n + j]);
  return prev;
}

}  // namespace

template <>
Rational det<Rational>(const MatQ& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "det of non-square matrix");
  if (m.rows() == 0) return Rational(1);
  std::vector<mpz_class> scale;
  auto a = clear_rows(m, scale);
  mpz_class s = 1;
  for (const auto& l : scale) s *= l;
  return Rational(bareiss_det(std::move(a)), s);
}

template <>
GaussRational det<GaussRational>(const MatG& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "det of non-square matrix");
  if (m.rows() == 0) return GaussRational(1);
  std::vector<mpz_class> scale;
  auto a = clear_rows(m, scale);
  mpz_class s = 1;
  for (const auto& l : scale) s *= l;
  GaussInt d = bareiss_det(std::move(a));
  return GaussRational(Rational(d.re, s), Rational(d.im, s));
}

template <>
MatQ inverse<Rational>(const MatQ& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<mpz_class> scale;
  std::vector<std::vector<mpz_class>> right;
  mpz_class d = bareiss_inverse(clear_rows(m, scale), right);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  // m = L^-1 a, so m^-1 = a^-1 L.
  MatQ inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (right[i][j] != 0) inv(i, j) = Rational(right[i][j] * scale[j], d);
  return inv;
}

template <>
MatG inverse<GaussRational>(const MatG& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<mpz_class> scale;
  std::vector<std::vector<GaussInt>> right;
  GaussInt d = bareiss_inverse(clear_rows(m, scale), right);
  if (ring_zero(d)) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  const mpz_class norm = d.re * d.re + d.im * d.im;
  MatG inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const GaussInt& x = right[i][j];
      if (ring_zero(x)) continue;
      // x l_j conj(d) / |d|^2
      mpz_class re = (x.re * d.re + x.im * d.im) * scale[j], im = (x.im * d.re - x.re * d.im) * scale[j];
      inv(i, j) = GaussRational(Rational(re, norm), Rational(im, norm));
    }
  }
  return inv;
}

template RrefResult<Rational> rref<Rational>(MatQ);
template RrefResult<GaussRational> rref<GaussRational>(MatG);
template std::size_t rank<Rational>(const MatQ&);
template std::size_t rank<GaussRational>(const MatG&);
template std::vector<std::vector<Rational>> nullspace<Rational>(const MatQ&);
template std::vector<std::vector<GaussRational>> nullspace<GaussRational>(const MatG&);
template std::optional<std::vector<Rational>> solve<Rational>(const MatQ&, const std::vector<Rational>&);
template std::optional<std::vector<GaussRational>> solve<GaussRational>(const MatG&,
                                                                        const std::vector<GaussRational>&);

}  // namespace locaut
