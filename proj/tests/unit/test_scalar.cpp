#include <gtest/gtest.h>

#include "locaut/autos/automorphism.hpp"
#include "locaut/random.hpp"
#include "locaut/scalar/classes.hpp"
#include "locaut/scalar/mulfunc.hpp"
#include "oracles.hpp"

using namespace locaut;

namespace {
Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }
SignedFactored F(long p, long d = 1) { return factor(q(p, d)); }

// Oracle for lattice characters: f(x) = g(x)^n x^eps is an automorphism of the
// lattice iff the exponent vectors of f on the generators are independent and
// -1 is not sent to +1.
bool lattice_class_oracle(const std::vector<Rational>& gens, const std::vector<Rational>& images, int sign_image,
                          bool with_sign, std::size_t n, int eps) {
  std::vector<Rational> fv;
  for (std::size_t k = 0; k < gens.size(); ++k) fv.push_back(pow(images[k], static_cast<long>(n)) * pow(gens[k], eps));
  if (oracle::minor_rank(oracle::exponent_matrix(fv)) != gens.size()) return false;
  if (!with_sign) return true;
  long s = (sign_image < 0 && n % 2 == 1) ? 1 : -1;  // g(-1)^n * (-1)
  return s == -1;
}

ScalarTable table_of(std::vector<std::pair<Rational, Rational>> pts) {
  ScalarTable t;
  for (auto& [x, y] : pts) t.push_back({factor(x), factor(y)});
  return t;
}
}  // namespace

TEST(MulFunc, Evaluation) {
  auto g = MulFunc::power(q(1, 2), NegSign::Flip);
  EXPECT_EQ(g.eval_real(F(4)), F(2));
  EXPECT_EQ(g.eval_real(F(-4)), F(-2));
  EXPECT_THROW(MulFunc::power(q(1, 2)).eval_real(F(2)).to_rational(), Error);
  auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3)}, true);
  auto h = MulFunc::real_hom(hom_on_lattice(lat, {q(5), q(1, 7)}, -1));
  EXPECT_EQ(h.eval_real(F(-12)), F(-25, 7));
  EXPECT_THROW(h.eval_real(F(5)), Error);
  EXPECT_FALSE(h.try_eval_real(F(5)));
  auto c = MulFunc::circle_power(3);
  EXPECT_EQ(c.eval_circle_exact(GaussRational::i()), GaussRational(q(0), q(-1)));
  EXPECT_THROW(MulFunc(Ambient::Circle, ContinuousPower{q(1, 2), NegSign::Same}), Error);
  EXPECT_TRUE(MulFunc::trivial(Ambient::RStar).is_trivial());
}

TEST(MulFunc, CircleLattice) {
  auto lat = CircleLattice::make({AngleGen::rational("t", q(1, 6)), AngleGen::symbolic("a", 1.0)});
  auto h = circle_hom(lat, {CircleElem{{q(1), q(0)}}, CircleElem{{q(0), q(2)}}});
  auto g = MulFunc::circle_hom(h);
  Complex z = std::polar(1.0, 2 * M_PI / 6 + 1.0);
  EXPECT_LT(std::abs(g.eval_circle(z) - std::polar(1.0, 2 * M_PI / 6 + 2.0)), 1e-9);
  EXPECT_THROW(g.eval_circle(std::polar(1.0, 0.3)), Error);
  // A torsion generator of order 6 cannot go to a symbolic angle.
  EXPECT_THROW(circle_hom(lat, {CircleElem{{q(0), q(1)}}, CircleElem{{q(0), q(1)}}}), Error);
}

TEST(Classes, PowerClassMatchesRule) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 6));
    int eps = rng.coin() ? 1 : -1;
    Rational c = rng.coin() ? Rational(rng.uniform_int(-2, 2)) : rng.small_rational(3, 3, false);
    if (rng.uniform_int(0, 4) == 0) c = Rational(-eps) / Rational(static_cast<long>(n));
    NegSign neg = rng.coin() ? NegSign::Flip : NegSign::Same;
    auto g = MulFunc::power(c, neg);
    // f(x) = |x|^(nc+eps) sgn-twisted; automorphism iff exponent nonzero and f(-1) = -1.
    Rational e = Rational(static_cast<long>(n)) * c + Rational(eps);
    bool f_minus_one_negative = !(neg == NegSign::Flip && n % 2 == 1);
    bool expect = !e.is_zero() && f_minus_one_negative;
    EXPECT_EQ(check_Mr(g, n, eps).yes, expect) << g.describe() << " n=" << n << " eps=" << eps;
  }
  EXPECT_TRUE(check_M1r(MulFunc::trivial(Ambient::RStar), 3).yes);
  EXPECT_FALSE(check_M2r(MulFunc::power(q(1, 3)), 3).yes);
}

TEST(Classes, LatticeClassMatchesOracle) {
  Rng rng(22);
  const std::vector<Rational> pool = {q(2), q(3), q(5), q(6), q(1, 2), q(9), q(10, 3), q(1)};
  for (int t = 0; t < 200; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 5));
    int eps = rng.coin() ? 1 : -1;
    bool with_sign = rng.coin();
    std::vector<Rational> gens = {q(2), q(3)};
    std::vector<Rational> images = {pool[rng.uniform_int(0, 7)], pool[rng.uniform_int(0, 7)]};
    int sign_image = with_sign && rng.coin() ? -1 : 1;
    auto lat = RealLattice::make(gens, with_sign);
    auto g = MulFunc::real_hom(hom_on_lattice(lat, images, sign_image));
    bool expect = lattice_class_oracle(gens, images, sign_image, with_sign, n, eps);
    auto v = check_Mr(g, n, eps);
    EXPECT_EQ(v.yes, expect) << g.describe() << " n=" << n << " eps=" << eps << " : " << v.certificate;
    if (v.yes) EXPECT_TRUE(v.assumes_extension);
  }
}

TEST(Classes, CircleClass) {
  for (long k = -3; k <= 3; ++k)
    for (std::size_t n = 3; n <= 5; ++n)
      EXPECT_EQ(check_Mu(MulFunc::circle_power(k), n).yes, std::abs(static_cast<long>(n) * k + 1) == 1);
  auto lat = CircleLattice::make({AngleGen::symbolic("a", 1.0), AngleGen::symbolic("b", 2.0)});
  // G = [[-1, 1], [0, 0]] gives nG + I singular for n = 1 only; n = 3 keeps it invertible.
  auto h = circle_hom(lat, {CircleElem{{q(-1), q(0)}}, CircleElem{{q(1), q(0)}}});
  EXPECT_TRUE(check_Mu(MulFunc::circle_hom(h), 3).yes);
  auto h2 = circle_hom(lat, {CircleElem{{q(-1, 3), q(0)}}, CircleElem{{q(0), q(0)}}});
  EXPECT_FALSE(check_Mu(MulFunc::circle_hom(h2), 3).yes);
  auto tl = CircleLattice::make({AngleGen::rational("w", q(1, 5))});
  // z -> z^(3j+1): j = 1 gives z^4 = z^-1 on the 5th roots, an automorphism.
  EXPECT_TRUE(check_Mu(MulFunc::circle_hom(circle_hom(tl, {CircleElem{{q(1)}}})), 3).yes);
  // j = 3: z^10 = 1 collapses.
  EXPECT_FALSE(check_Mu(MulFunc::circle_hom(circle_hom(tl, {CircleElem{{q(3)}}})), 3).yes);
}

TEST(Classes, PropertyP) {
  ClassMap good{{{F(2), F(3)}, {F(4), F(9)}, {F(6), F(15)}}};
  EXPECT_TRUE(check_P(good).yes);
  ClassMap bad_power{{{F(2), F(3)}, {F(4), F(10)}}};
  EXPECT_FALSE(check_P(bad_power).yes);
  ClassMap collapse{{{F(2), F(3)}, {F(5), F(9)}}};
  EXPECT_FALSE(check_P(collapse).yes);
  ClassMap non_one{{{F(2), F(1)}}};
  EXPECT_FALSE(check_P(non_one).yes);
}

TEST(Classes, LarRoutesAgree) {
  Rng rng(23);
  const std::vector<Rational> pool = {q(2), q(3), q(4), q(6), q(9), q(1, 2), q(8), q(12), q(5)};
  int yes = 0, no = 0;
  for (int t = 0; t < 300; ++t) {
    std::vector<std::pair<Rational, Rational>> pts;
    std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 4));
    for (std::size_t k = 0; k < m; ++k) {
      Rational x = pool[rng.uniform_int(0, 8)], y = pool[rng.uniform_int(0, 8)];
      if (rng.uniform_int(0, 3) == 0) {
        x = -x;
        if (rng.uniform_int(0, 5) > 0) y = -y;
      }
      bool dup = false;
      for (auto& p : pts) dup = dup || p.first == x;
      if (!dup) pts.push_back({x, y});
    }
    auto tab = table_of(pts);
    bool a = check_LAR(tab).yes, b = lar_by_interpolation(tab).yes;
    EXPECT_EQ(a, b);
    (a ? yes : no)++;
  }
  EXPECT_GT(yes, 10);
  EXPECT_GT(no, 10);
}

TEST(Classes, PairwiseButNotGlobal) {
  // Character values g(2) = 1, g(3) = 3^(1/3), g(6) = 1 for n = 3 induce
  // h(x) = g(x)^3 x with h(2) = 2, h(3) = 9, h(6) = 6: each pair is matched by
  // a class member, the three together are not.
  ScalarTable tab = {{F(2), F(1)}, {F(3), F(3).pow(q(1, 3))}, {F(6), F(1)}};
  auto rep = check_LM1r_on_domain(tab, 3);
  EXPECT_TRUE(rep.all_ok);
  ASSERT_EQ(rep.pairs.size(), 3u);
  EXPECT_EQ((tab[1].value.pow(q(3)) * tab[1].x).str(), "3^2");
  auto ext = interpolating_character(tab, 3, 1);
  EXPECT_FALSE(ext.witness);
  EXPECT_NE(ext.reason.find("forces"), std::string::npos) << ext.reason;
  ScalarTable good = {{F(2), F(1)}, {F(3), F(3).pow(q(1, 3))}, {F(6), F(3).pow(q(1, 3))}};
  auto ext2 = interpolating_character(good, 3, 1);
  ASSERT_TRUE(ext2.witness);
  auto g = MulFunc::real_hom(*ext2.witness);
  EXPECT_TRUE(check_M1r(g, 3).yes);
  for (const auto& p : good) EXPECT_EQ(g.eval_real(p.x).str(), p.value.str());
}

TEST(Classes, PairwiseRejectsCollapsingPair) {
  // g(2) = 4, g(4) = 8: h(2) = 2^7 but h(4) = 2^11 != (2^7)^2.
  auto tab = table_of({{q(2), q(4)}, {q(4), q(8)}});
  auto rep = check_LM1r_on_domain(tab, 3);
  EXPECT_FALSE(rep.all_ok);
  // A negative character value on a negative point needs n even.
  auto neg = table_of({{q(-1), q(-1)}, {q(2), q(2)}});
  EXPECT_FALSE(check_LM1r_on_domain(neg, 3).all_ok);
  EXPECT_TRUE(check_LM1r_on_domain(neg, 4).all_ok);
  auto pos = table_of({{q(-1), q(1)}, {q(2), q(2)}});
  EXPECT_TRUE(check_LM1r_on_domain(pos, 3).all_ok);
  auto neg_pos = table_of({{q(2), q(-1)}});
  EXPECT_FALSE(interpolating_character(neg_pos, 4, 1).witness);
}

TEST(Classes, GlobalCharactersPassPairwise) {
  Rng rng(24);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    std::size_t n = t % 2 ? 3 : 4;
    auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3), q(5)}, true);
    std::vector<Rational> imgs = {rng.small_rational(3, 3), rng.small_rational(3, 3), rng.small_rational(3, 3)};
    for (auto& v : imgs) v = v.abs();
    int sign_image = n % 2 == 0 && rng.coin() ? -1 : 1;
    auto g = MulFunc::real_hom(hom_on_lattice(lat, imgs, sign_image));
    if (!check_M1r(g, n).yes) continue;
    ++checked;
    ScalarTable tab;
    for (long x : {2L, 3L, -5L, 6L, 10L, -12L}) tab.push_back({F(x), g.eval_real(F(x))});
    EXPECT_TRUE(check_LM1r_on_domain(tab, n).all_ok) << g.describe();
    auto ext = interpolating_character(tab, n, 1);
    ASSERT_TRUE(ext.witness.has_value()) << ext.reason;
    for (const auto& p : tab) EXPECT_EQ(ext.witness->eval(p.x), p.value);
  }
  EXPECT_GT(checked, 20);
}

TEST(Scalar, ComposeMatchesPointwise) {
  Rng rng(25);
  const std::size_t n = 3;
  for (int t = 0; t < 100; ++t) {
    int ea = rng.coin() ? 1 : -1, eb = rng.coin() ? 1 : -1;
    auto ga = MulFunc::power(Rational(rng.uniform_int(-2, 2)), rng.coin() ? NegSign::Flip : NegSign::Same);
    auto gb = MulFunc::power(Rational(rng.uniform_int(-2, 2)));
    auto s = compose_scalar(ga, ea, gb, eb, n);
    for (long d : {2L, -3L, 5L}) {
      auto gd = gb.eval_real(F(d));
      auto inner = gd.pow(Rational(static_cast<long>(n))) * F(d).pow(Rational(eb));
      auto expect = ga.eval_real(inner) * gd.pow(Rational(ea));
      EXPECT_EQ(s.eval_real(F(d)), expect);
    }
  }
}

TEST(Scalar, InvertMatchesDefinition) {
  const std::size_t n = 4;
  for (long c = -2; c <= 2; ++c) {
    for (int eps : {1, -1}) {
      auto g = MulFunc::power(Rational(c), NegSign::Flip);
      if (!check_Mr(g, n, eps).yes) continue;
      auto h = invert_scalar(g, eps, n);
      for (long d : {2L, -3L, 7L}) {
        auto gd = g.eval_real(F(d));
        auto fd = gd.pow(Rational(static_cast<long>(n))) * F(d).pow(Rational(eps));
        EXPECT_EQ(h.eval_real(fd), gd.pow(Rational(-eps)));
      }
    }
  }
}
