#include "locaut/autos/generate.hpp"

#include <cmath>

#include "locaut/matrix/scaled.hpp"
#include "locaut/scalar/classes.hpp"

namespace locaut {

namespace {

Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

Rational smooth(Rng& rng) {
  return pow(q(2), rng.uniform_int(-2, 2)) * pow(q(3), rng.uniform_int(-2, 2)) * (rng.coin() ? q(1) : q(-1));
}

}  // namespace

const CircleLattice& default_circle_lattice() {
  static const CircleLattice lat =
      CircleLattice::make({AngleGen::symbolic("a", 1.0), AngleGen::symbolic("b", std::sqrt(2.0))});
  return lat;
}

// A random in-class g for the form, by rejection.
MulFunc random_character(const GroupTag& g, int eps, Rng& rng) {
  const std::size_t n = g.n;
  for (;;) {
    MulFunc cand;
    if (g.family == Family::Un) {
      std::vector<CircleElem> imgs;
      for (int k = 0; k < 2; ++k)
        imgs.push_back(CircleElem{{Rational(rng.uniform_int(-1, 1)), Rational(rng.uniform_int(-1, 1))}});
      cand = MulFunc::circle_hom(circle_hom(default_circle_lattice(), imgs));
      if (check_Mu(cand, n).yes) return cand;
      continue;
    }
    if (g.field == Field::C || rng.coin()) {
      NegSign neg = g.field == Field::R && n % 2 == 0 && rng.coin() ? NegSign::Flip : NegSign::Same;
      cand = MulFunc::power(Rational(rng.uniform_int(-2, 2)), neg);
    } else {
      auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3)}, true);
      std::vector<Rational> imgs = {smooth(rng).abs(), smooth(rng).abs()};
      cand = MulFunc::real_hom(hom_on_lattice(lat, imgs, n % 2 == 0 && rng.coin() ? -1 : 1));
    }
    if (check_Mr(cand, n, eps).yes) return cand;
  }
}

Automorphism random_automorphism(const GroupTag& g, Kind kind, Sigma sigma, Rng& rng, bool numeric_t) {
  AnyMatrix t;
  if (g.unitary())
    t = numeric_t ? AnyMatrix(random_unitary(g.n, rng)) : AnyMatrix(random_exact_unitary(g.n, rng));
  else if (g.field == Field::R)
    t = random_gl_q(g.n, rng);
  else
    t = random_gl_g(g.n, rng);
  std::optional<MulFunc> ch;
  if (g.has_scalar_part()) ch = random_character(g, kind_sign(kind), rng);
  return Automorphism::build(g, kind, t, sigma, ch);
}

AnyMatrix random_element(const GroupTag& g, Rng& rng) {
  const std::size_t n = g.n;
  switch (g.family) {
    case Family::SL: return g.field == Field::R ? AnyMatrix(random_sl_q(n, rng)) : AnyMatrix(random_sl_g(n, rng));
    case Family::GL: {
      if (g.field == Field::R) return random_gl_q_with_det(n, smooth(rng), rng);
      static const std::vector<GaussRational> dets = {GaussRational(q(3), q(4)), GaussRational(q(2)),
                                                      GaussRational(q(0), q(-5)), GaussRational(q(1)),
                                                      GaussRational(q(-1, 2), q(1, 2))};
      return random_gl_g_with_det(n, dets[static_cast<std::size_t>(rng.uniform_int(0, 4))], rng);
    }
    case Family::SUn: return random_special_unitary(n, rng);
    case Family::Un: {
      CircleElem e{{Rational(rng.uniform_int(-1, 1)), Rational(rng.uniform_int(-1, 1))}};
      MatC d = MatC::identity(n);
      d(0, 0) = circle_value(default_circle_lattice(), e);
      return random_special_unitary(n, rng) * d;
    }
    default: break;
  }
  return MatQ::identity(n);
}

HomomorphismCheck check_homomorphism(const Automorphism& phi, std::size_t pairs, Rng& rng, double tol) {
  HomomorphismCheck out;
  const GroupTag& g = phi.group();
  for (std::size_t p = 0; p < pairs; ++p) {
    AnyMatrix x = random_element(g, rng), y = random_element(g, rng);
    ScaledMatrix lhs = phi.apply_scaled(any_mul(x, y));
    ScaledMatrix px = phi.apply_scaled(x), py = phi.apply_scaled(y);
    ScaledMatrix rhs = ScaledMatrix::make(px.scale * py.scale, any_mul(px.m, py.m));
    const bool numeric = regime_of(lhs.m) == Regime::C64 || regime_of(rhs.m) == Regime::C64;
    ++out.tested;
    if (!scaled_equal(lhs, rhs, numeric ? tol : 0.0) && ++out.failed == 1)
      out.first_failure = "pair " + std::to_string(p) + ": phi(AB) != phi(A) phi(B)";
  }
  return out;
}

}  // namespace locaut
