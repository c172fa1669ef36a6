#include "locaut/random.hpp"

#include <cmath>

#include "locaut/matrix/linalg.hpp"

namespace locaut {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ i) ^ (j * 0x2545f4914f6cdd1dULL));
}

long Rng::uniform_int(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(eng_);
}

double Rng::uniform_real(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(eng_);
}

double Rng::normal() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(eng_);
}

Rational Rng::small_rational(long num_max, long den_max, bool nonzero) {
  while (true) {
    long p = uniform_int(-num_max, num_max);
    long q = uniform_int(1, den_max);
    if (nonzero && p == 0) continue;
    return Rational(mpz_class(p), mpz_class(q));
  }
}

GaussRational Rng::small_gauss(long num_max, long den_max, bool nonzero) {
  while (true) {
    GaussRational z(small_rational(num_max, den_max, false), small_rational(num_max, den_max, false));
    if (nonzero && z.is_zero()) continue;
    return z;
  }
}

namespace {

template <class S>
Matrix<S> lower_upper(std::size_t n, Rng& rng, std::vector<S> diag) {
  Matrix<S> l = Matrix<S>::identity(n), u = Matrix<S>::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = S(rng.uniform_int(-2, 2));
      u(j, i) = S(rng.uniform_int(-2, 2));
    }
  return l * Matrix<S>::diagonal(diag) * u;
}

}  // namespace

MatQ random_sl_q(std::size_t n, Rng& rng) {
  std::vector<Rational> d(n);
  Rational prod(1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = rng.small_rational(3, 2);
    prod *= d[i];
  }
  d[n - 1] = prod.inverse();
  return lower_upper<Rational>(n, rng, std::move(d));
}

MatQ random_gl_q(std::size_t n, Rng& rng) {
  std::vector<Rational> d(n);
  for (auto& x : d) x = rng.small_rational(3, 2);
  return lower_upper<Rational>(n, rng, std::move(d));
}

MatQ random_gl_q_with_det(std::size_t n, const Rational& det, Rng& rng) {
  MatQ d = MatQ::identity(n);
  d(0, 0) = det;
  return random_sl_q(n, rng) * d * random_sl_q(n, rng);
}

MatG random_sl_g(std::size_t n, Rng& rng) {
  std::vector<GaussRational> d(n);
  GaussRational prod(1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = rng.small_gauss(2, 2);
    prod *= d[i];
  }
  d[n - 1] = prod.inverse();
  auto a = lower_upper<GaussRational>(n, rng, std::move(d));
  // Mix in complex off-diagonal entries.
  MatG e = MatG::identity(n);
  if (n > 1) e(0, n - 1) = GaussRational(Rational(0), Rational(1)) * GaussRational(rng.uniform_int(-1, 1));
  return a * e;
}

MatG random_gl_g(std::size_t n, Rng& rng) {
  MatG d = MatG::identity(n);
  d(0, 0) = rng.small_gauss(2, 2);
  return random_sl_g(n, rng) * d;
}

MatG random_gl_g_with_det(std::size_t n, const GaussRational& det, Rng& rng) {
  if (det.is_zero()) throw Error(ErrorCode::ZeroInput, "determinant 0 requested");
  std::vector<GaussRational> d(n);
  GaussRational prod(1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = rng.small_gauss(2, 2);
    prod *= d[i];
  }
  d[n - 1] = det / prod;
  auto a = lower_upper<GaussRational>(n, rng, std::move(d));
  MatG e = MatG::identity(n);
  if (n > 1) e(0, n - 1) = GaussRational(Rational(0), Rational(1)) * GaussRational(rng.uniform_int(-1, 1));
  return a * e;
}

namespace {

// Unit-modulus Gaussian rationals (a + bi)/c from Pythagorean triples.
GaussRational random_phase(Rng& rng) {
  static const long triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}};
  const auto& t = triples[rng.uniform_int(0, 3)];
  Rational a{mpz_class(t[0]), mpz_class(t[2])};
  Rational b{mpz_class(t[1]), mpz_class(t[2])};
  if (rng.coin()) std::swap(a, b);
  if (rng.coin()) a = -a;
  if (rng.coin()) b = -b;
  switch (rng.uniform_int(0, 2)) {
    case 0: return GaussRational(a, b);
    case 1: return GaussRational(0, 1) * GaussRational(a, b);
    default: return GaussRational(1);
  }
}

}  // namespace

MatG random_exact_unitary(std::size_t n, Rng& rng) {
  MatG u = MatG::identity(n);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(static_cast<long>(i) + 1, static_cast<long>(n) - 1));
      GaussRational c = random_phase(rng);
      // Real rotation in the (i, j) plane times phases.
      GaussRational ph = random_phase(rng);
      Rational cr = c.re(), sr = c.im();
      if (sr.is_zero()) {
        cr = Rational(3) / Rational(5);
        sr = Rational(4) / Rational(5);
      }
      MatG g = MatG::identity(n);
      g(i, i) = GaussRational(cr);
      g(i, j) = GaussRational(-sr) * ph;
      g(j, i) = GaussRational(sr);
      g(j, j) = GaussRational(cr) * ph;
      u = g * u;
    }
    MatG d = MatG::identity(n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = random_phase(rng);
    u = d * u;
  }
  return u;
}

MatG random_exact_special_unitary(std::size_t n, Rng& rng) {
  MatG u = random_exact_unitary(n, rng);
  GaussRational d = det(u);
  for (std::size_t i = 0; i < n; ++i) u(i, 0) *= d.conj();
  return u;
}

MatC random_unitary(std::size_t n, Rng& rng) {
  MatC g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return qr_unitary(g);
}

MatC random_special_unitary(std::size_t n, Rng& rng) {
  MatC u = random_unitary(n, rng);
  Complex d = det(u);
  Complex root = std::pow(d, 1.0 / static_cast<double>(n));
  return u * (Complex(1.0, 0.0) / root);
}

std::vector<Complex> random_unit_vector(std::size_t n, Rng& rng) {
  std::vector<Complex> v(n);
  double norm = 0.0;
  for (auto& x : v) {
    x = Complex(rng.normal(), rng.normal());
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace locaut
