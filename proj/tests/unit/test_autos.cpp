#include <gtest/gtest.h>

#include "locaut/autos/automorphism.hpp"
#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"
#include "locaut/scalar/classes.hpp"

using namespace locaut;

namespace {
Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

const CircleLattice& circle_lattice() {
  static const CircleLattice lat = CircleLattice::make({AngleGen::symbolic("a", 1.0), AngleGen::symbolic("b", std::sqrt(2.0))});
  return lat;
}

Rational smooth(Rng& rng) {
  return pow(q(2), rng.uniform_int(-2, 2)) * pow(q(3), rng.uniform_int(-2, 2)) * (rng.coin() ? q(1) : q(-1));
}

// A random in-class scalar character for the group.
MulFunc random_character(const GroupTag& g, int eps, Rng& rng) {
  const std::size_t n = g.n;
  for (;;) {
    MulFunc cand;
    if (g.family == Family::Un) {
      std::vector<CircleElem> imgs;
      for (int k = 0; k < 2; ++k) imgs.push_back(CircleElem{{Rational(rng.uniform_int(-1, 1)), Rational(rng.uniform_int(-1, 1))}});
      cand = MulFunc::circle_hom(circle_hom(circle_lattice(), imgs));
      if (check_Mu(cand, n).yes) return cand;
      continue;
    }
    if (g.field == Field::C || rng.coin()) {
      // GL(C) evaluates at |det|; integer powers stay exact on our samples.
      NegSign neg = g.field == Field::R && n % 2 == 0 && rng.coin() ? NegSign::Flip : NegSign::Same;
      cand = MulFunc::power(Rational(rng.uniform_int(-2, 2)), neg);
    } else {
      auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3)}, true);
      std::vector<Rational> imgs = {smooth(rng).abs(), smooth(rng).abs()};
      int s = n % 2 == 0 && rng.coin() ? -1 : 1;
      cand = MulFunc::real_hom(hom_on_lattice(lat, imgs, s));
    }
    if (check_Mr(cand, n, eps).yes) return cand;
  }
}

AnyMatrix random_T(const GroupTag& g, Rng& rng, bool numeric) {
  if (g.unitary()) return numeric ? AnyMatrix(random_unitary(g.n, rng)) : AnyMatrix(random_exact_unitary(g.n, rng));
  if (g.field == Field::R) return random_gl_q(g.n, rng);
  return random_gl_g(g.n, rng);
}

Automorphism random_auto(const GroupTag& g, Rng& rng, bool numeric = false) {
  Kind kind = !g.unitary() && rng.coin() ? Kind::Contragredient : Kind::Standard;
  Sigma sigma = g.field == Field::C && rng.coin() ? Sigma::Conj : Sigma::Id;
  std::optional<MulFunc> ch;
  if (g.has_scalar_part()) ch = random_character(g, kind_sign(kind), rng);
  return Automorphism::build(g, kind, random_T(g, rng, numeric), sigma, ch);
}

AnyMatrix random_element(const GroupTag& g, Rng& rng) {
  const std::size_t n = g.n;
  switch (g.family) {
    case Family::SL:
      return g.field == Field::R ? AnyMatrix(random_sl_q(n, rng)) : AnyMatrix(random_sl_g(n, rng));
    case Family::GL:
      if (g.field == Field::R) return random_gl_q_with_det(n, smooth(rng), rng);
      {
        static const std::vector<GaussRational> dets = {GaussRational(q(3), q(4)), GaussRational(q(2)),
                                                        GaussRational(q(0), q(-5)), GaussRational(q(1))};
        return random_gl_g_with_det(n, dets[rng.uniform_int(0, 3)], rng);
      }
    case Family::SUn: return random_special_unitary(n, rng);
    case Family::Un: {
      CircleElem e{{Rational(rng.uniform_int(-1, 1)), Rational(rng.uniform_int(-1, 1))}};
      MatC d = MatC::identity(n);
      d(0, 0) = circle_value(circle_lattice(), e);
      return random_special_unitary(n, rng) * d;
    }
    default: break;
  }
  return MatQ::identity(n);
}

AnyMatrix mul(const AnyMatrix& a, const AnyMatrix& b) {
  Regime r = join(regime_of(a), regime_of(b));
  return std::visit([&](const auto& x) -> AnyMatrix {
    using M = std::decay_t<decltype(x)>;
    return x * std::get<M>(promote(b, r));
  }, promote(a, r));
}

std::vector<GroupTag> groups() {
  return {GroupTag::parse("sl-r-3"), GroupTag::parse("gl-r-3"), GroupTag::parse("gl-r-4"), GroupTag::parse("sl-c-3"),
          GroupTag::parse("gl-c-3"), GroupTag::parse("su-3"),  GroupTag::parse("u-3"),    GroupTag::parse("sl-r-4")};
}

bool exact_group(const GroupTag& g) { return !g.unitary(); }

double rel_diff(const AnyMatrix& a, const AnyMatrix& b) {
  double scale = 1.0;
  std::visit([&](const auto& m) {
    for (const auto& x : m.data()) scale = std::max(scale, std::abs(ScalarTraits<std::decay_t<decltype(x)>>::to_complex(x)));
  }, a);
  return any_max_abs_diff(a, b) / scale;
}

// Exact when the scalar is representable, numeric otherwise; nullopt when the
// determinant lies outside the character's lattice.
std::optional<AnyMatrix> apply_any(const Automorphism& phi, const AnyMatrix& a) {
  try {
    return phi.apply(a);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DetOutsideLattice) return std::nullopt;
    if (e.code() != ErrorCode::NotRepresentable) throw;
  }
  try {
    return phi.apply(promote(a, Regime::C64));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotRepresentable) return std::nullopt;
    throw;
  }
}
}  // namespace

TEST(Automorphism, Examples) {
  auto sl3 = GroupTag::parse("sl-r-3");
  MatQ t = MatQ::from_rows({{q(1), q(1), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
  auto phi = Automorphism::build(sl3, Kind::Standard, t, Sigma::Id);
  MatQ a = MatQ::from_rows({{q(2), q(0), q(0)}, {q(0), q(1, 2), q(0)}, {q(0), q(0), q(1)}});
  EXPECT_EQ(std::get<MatQ>(phi.apply(a)), t * a * inverse(t));
  auto psi = Automorphism::build(sl3, Kind::Contragredient, MatQ::identity(3), Sigma::Id);
  EXPECT_EQ(std::get<MatQ>(psi.apply(a)), inverse(a).transpose());
  auto gl3 = GroupTag::parse("gl-r-3");
  auto chi = Automorphism::build(gl3, Kind::Standard, MatQ::identity(3), Sigma::Id, MulFunc::power(q(1)));
  MatQ b = MatQ::diagonal({q(2), q(1), q(1)});
  EXPECT_EQ(std::get<MatQ>(chi.apply(b)), b * q(2));
  EXPECT_THROW(phi.apply(b), Error);
}

TEST(Automorphism, BuildRejectsBadParameters) {
  auto gl3 = GroupTag::parse("gl-r-3");
  auto expect_code = [](auto&& f, ErrorCode code) {
    try {
      f();
      ADD_FAILURE() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  };
  expect_code([&] { Automorphism::build(gl3, Kind::Standard, MatQ::identity(3), Sigma::Conj); }, ErrorCode::IllegalSigma);
  expect_code([&] { Automorphism::build(gl3, Kind::Standard, MatQ::identity(3), Sigma::Id, MulFunc::power(q(-1, 3))); },
              ErrorCode::IllegalScalarClass);
  expect_code([&] { Automorphism::build(gl3, Kind::Standard, MatQ::identity(3), Sigma::Id, MulFunc::power(q(0), NegSign::Flip)); },
              ErrorCode::IllegalScalarClass);
  expect_code([&] { Automorphism::build(gl3, Kind::Standard, MatQ(3, 3), Sigma::Id); }, ErrorCode::SingularT);
  auto su3 = GroupTag::parse("su-3");
  MatC notu = MatC::identity(3) * Complex(2.0, 0.0);
  expect_code([&] { Automorphism::build(su3, Kind::Standard, notu, Sigma::Id); }, ErrorCode::NonUnitaryT);
  expect_code([&] { Automorphism::build(su3, Kind::Contragredient, MatC::identity(3), Sigma::Id); }, ErrorCode::BadParameters);
  EXPECT_THROW(Automorphism::build(GroupTag::parse("slminus-r-3"), Kind::Standard, MatQ::identity(3), Sigma::Id), Error);
}

TEST(Automorphism, HomomorphismLaw) {
  Rng rng(31);
  for (const auto& g : groups()) {
    for (int t = 0; t < 12; ++t) {
      auto phi = random_auto(g, rng, !exact_group(g) && t % 2 == 0);
      AnyMatrix a = random_element(g, rng), b = random_element(g, rng);
      AnyMatrix lhs = phi.apply(mul(a, b));
      AnyMatrix rhs = mul(phi.apply(a), phi.apply(b));
      EXPECT_TRUE(member(phi.apply(a), g, 1e-8).member) << phi.describe();
      if (exact_group(g)) EXPECT_EQ(lhs, rhs) << phi.describe();
      else EXPECT_LT(rel_diff(lhs, rhs), 1e-9) << phi.describe();
    }
  }
}

TEST(Automorphism, ComposeAndInvert) {
  Rng rng(32);
  int round_trips = 0, composed = 0;
  for (const auto& g : groups()) {
    for (int t = 0; t < 10; ++t) {
      auto phi = random_auto(g, rng), psi = random_auto(g, rng);
      auto both = compose(phi, psi);
      auto inv = invert(phi);
      for (int s = 0; s < 3; ++s) {
        AnyMatrix a = random_element(g, rng);
        auto x = apply_any(both, a);
        auto y = apply_any(psi, a);
        if (y) y = apply_any(phi, *y);
        auto back = apply_any(phi, a);
        if (back) back = apply_any(inv, *back);
        auto back2 = apply_any(inv, a);
        if (back2) back2 = apply_any(phi, *back2);
        if (x && y) {
          ++composed;
          if (regime_of(*x) != Regime::C64 && regime_of(*y) != Regime::C64) EXPECT_EQ(*x, *y) << phi.describe() << " | " << psi.describe();
          else EXPECT_LT(rel_diff(*x, *y), 1e-9) << phi.describe() << " | " << psi.describe();
        }
        if (back) {
          ++round_trips;
          if (regime_of(*back) != Regime::C64) EXPECT_EQ(*back, promote(a, regime_of(*back))) << phi.describe();
          else EXPECT_LT(rel_diff(*back, a), 1e-9) << phi.describe();
        }
        if (back2) {
          ++round_trips;
          // Goes through floating point when the inverse character is fractional;
          // T and A enter with their condition numbers.
          EXPECT_LT(rel_diff(*back2, a), 1e-6) << phi.describe();
        }
      }
      EXPECT_EQ(compose(phi, inv).kind(), Kind::Standard);
    }
  }
  EXPECT_GT(round_trips, 300);
  EXPECT_GT(composed, 180);
}

TEST(Automorphism, ComposeRejectsMismatchedGroups) {
  auto a = Automorphism::identity(GroupTag::parse("sl-r-3"));
  auto b = Automorphism::identity(GroupTag::parse("sl-r-4"));
  EXPECT_THROW(compose(a, b), Error);
}
