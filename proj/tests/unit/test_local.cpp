#include <gtest/gtest.h>

#include "locaut/local/local_check.hpp"
#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"
#include "locaut/scalar/classes.hpp"

using namespace locaut;

namespace {
Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

SampleMap sample(const Automorphism& phi, const std::vector<AnyMatrix>& xs) {
  SampleMap m{phi.group(), {}};
  for (const auto& x : xs) m.pairs.push_back({x, phi.apply_scaled(x)});
  return m;
}

std::vector<AnyMatrix> sl_q_samples(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<AnyMatrix> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_sl_q(n, rng));
  return out;
}

void expect_sound(const MapReport& rep, const SampleMap& m) {
  for (const auto& p : rep.pairs) {
    if (p.status != PairStatus::Interpolable) continue;
    ASSERT_TRUE(p.witness);
    EXPECT_TRUE(scaled_equal(p.witness->apply_scaled(m.pairs[p.i].in), m.pairs[p.i].out, 1e-8));
    EXPECT_TRUE(scaled_equal(p.witness->apply_scaled(m.pairs[p.j].in), m.pairs[p.j].out, 1e-8));
  }
}

const GroupTag kSL3 = GroupTag::make(Family::SL, Field::R, 3);
}  // namespace

TEST(LocalCheck, IdentityPair) {
  MatQ a = MatQ::diagonal({q(2), q(1, 2), q(1)});
  MatQ b = MatQ::identity(3) + MatQ::unit(3, 0, 1);
  auto v = check_pair(kSL3, {a, a}, {b, b}, 1);
  EXPECT_EQ(v.status, PairStatus::Interpolable) << v.reason;
  EXPECT_EQ(v.witness->kind(), Kind::Standard);
}

TEST(LocalCheck, ConjugationPairGetsWitness) {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    MatQ T = random_gl_q(3, rng);
    auto phi = Automorphism::build(kSL3, t % 2 ? Kind::Contragredient : Kind::Standard, T, Sigma::Id);
    MatQ a = random_sl_q(3, rng), b = random_sl_q(3, rng);
    auto v = check_pair(kSL3, {a, phi.apply(a)}, {b, phi.apply(b)}, static_cast<std::uint64_t>(t));
    ASSERT_EQ(v.status, PairStatus::Interpolable) << v.reason;
    EXPECT_EQ(std::get<MatQ>(v.witness->apply(a)), std::get<MatQ>(phi.apply(a)));
    EXPECT_EQ(std::get<MatQ>(v.witness->apply(b)), std::get<MatQ>(phi.apply(b)));
  }
}

TEST(LocalCheck, SpectrumChangeIsNotInterpolable) {
  MatQ a = MatQ::diagonal({q(1), q(2), q(1, 2)});
  MatQ b = MatQ::from_rows({{q(1), q(1), q(0)}, {q(1), q(2), q(0)}, {q(0), q(0), q(1)}});
  // Trace 4 -> trace 5 keeps det 1 but changes the spectrum.
  MatQ bp = MatQ::from_rows({{q(1), q(1), q(0)}, {q(1), q(2), q(0)}, {q(0), q(0), q(1)}}) + MatQ::unit(3, 0, 1) * q(0);
  bp(2, 2) = q(2);
  bp(0, 0) = q(1, 2);
  bp(0, 1) = q(1, 2);
  ASSERT_EQ(det(bp), q(1));
  auto v = check_pair(kSL3, {a, a}, {b, bp}, 2);
  EXPECT_EQ(v.status, PairStatus::NotInterpolable) << v.reason;
}

TEST(LocalCheck, MapOfAutomorphismIsEvidence) {
  Rng rng(42);
  auto phi = Automorphism::build(kSL3, Kind::Contragredient, random_gl_q(3, rng), Sigma::Id);
  auto m = sample(phi, sl_q_samples(3, 5, rng));
  auto rep = check_map(m, 7);
  EXPECT_EQ(rep.status, MapStatus::LocalAutomorphismEvidence) << rep.summary;
  EXPECT_EQ(rep.pairs.size(), 10u);
  expect_sound(rep, m);
}

TEST(LocalCheck, ReplacedOutputIsRefuted) {
  Rng rng(43);
  auto phi = Automorphism::build(kSL3, Kind::Standard, random_gl_q(3, rng), Sigma::Id);
  auto m = sample(phi, sl_q_samples(3, 4, rng));
  m.pairs[2].out = MatQ(MatQ::diagonal({q(3), q(1, 3), q(1)}));
  auto rep = check_map(m, 7);
  ASSERT_EQ(rep.status, MapStatus::Refuted) << rep.summary;
  ASSERT_TRUE(rep.refuting_pair);
  EXPECT_TRUE(rep.refuting_pair->first == 2 || rep.refuting_pair->second == 2);
  for (const auto& p : rep.pairs)
    if (p.i != 2 && p.j != 2) EXPECT_EQ(p.status, PairStatus::Interpolable);
}

TEST(LocalCheck, MonotoneUnderSubsets) {
  Rng rng(44);
  auto phi = Automorphism::build(kSL3, Kind::Standard, random_gl_q(3, rng), Sigma::Id);
  auto m = sample(phi, sl_q_samples(3, 5, rng));
  m.pairs[4].out = MatQ(MatQ::diagonal({q(3), q(1, 3), q(1)}));
  auto full = check_map(m, 3);
  for (std::size_t drop = 0; drop < 5; ++drop) {
    SampleMap sub{m.group, {}};
    for (std::size_t i = 0; i < 5; ++i)
      if (i != drop) sub.pairs.push_back(m.pairs[i]);
    auto r = check_map(sub, 3);
    if (r.status == MapStatus::Refuted) EXPECT_EQ(full.status, MapStatus::Refuted);
    if (full.status == MapStatus::LocalAutomorphismEvidence) EXPECT_EQ(r.status, MapStatus::LocalAutomorphismEvidence);
  }
  EXPECT_EQ(full.status, MapStatus::Refuted);
}

TEST(LocalCheck, GLWithLatticeCharacter) {
  Rng rng(45);
  auto gl3 = GroupTag::parse("gl-r-3");
  auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3)}, true);
  auto g = MulFunc::real_hom(hom_on_lattice(lat, {q(2), q(1, 3)}, 1));
  ASSERT_TRUE(check_M1r(g, 3).yes);
  auto phi = Automorphism::build(gl3, Kind::Standard, random_gl_q(3, rng), Sigma::Id, g);
  std::vector<AnyMatrix> xs;
  for (long d : {2L, -3L, 6L, 1L, 4L}) xs.push_back(random_gl_q_with_det(3, q(d), rng));
  auto m = sample(phi, xs);
  auto rep = check_map(m, 1);
  EXPECT_EQ(rep.status, MapStatus::LocalAutomorphismEvidence) << rep.summary;
  expect_sound(rep, m);
}

TEST(LocalCheck, ScaledOutputsOfNonAutomorphism) {
  // B -> f(det B) B with f(2) = 1, f(3) = 3^(1/3), f(6) = 1: pairwise fine,
  // not multiplicative on the triple.
  Rng rng(46);
  auto gl3 = GroupTag::parse("gl-r-3");
  SampleMap m{gl3, {}};
  std::vector<std::pair<long, SignedFactored>> pts = {
      {2, SignedFactored()}, {3, factor(q(3)).pow(q(1, 3))}, {6, SignedFactored()}};
  for (auto& [d, f] : pts) {
    MatQ b = random_gl_q_with_det(3, q(d), rng);
    m.pairs.push_back({b, ScaledMatrix::make(f, b)});
  }
  EXPECT_FALSE(m.pairs[1].out.is_plain());
  auto rep = check_map(m, 5);
  EXPECT_EQ(rep.status, MapStatus::LocalAutomorphismEvidence) << rep.summary;
  for (const auto& p : rep.pairs) EXPECT_EQ(p.status, PairStatus::Interpolable) << p.reason;
  expect_sound(rep, m);
}

TEST(LocalCheck, ComplexAndUnitaryGroups) {
  Rng rng(47);
  auto slc = GroupTag::parse("sl-c-3");
  auto phi = Automorphism::build(slc, Kind::Standard, random_gl_g(3, rng), Sigma::Conj);
  std::vector<AnyMatrix> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(random_sl_g(3, rng));
  auto rep = check_map(sample(phi, xs), 2);
  EXPECT_EQ(rep.status, MapStatus::LocalAutomorphismEvidence) << rep.summary;

  auto su = GroupTag::parse("su-3");
  auto psi = Automorphism::build(su, Kind::Standard, random_exact_unitary(3, rng), Sigma::Conj);
  xs.clear();
  for (int i = 0; i < 3; ++i) xs.push_back(random_exact_special_unitary(3, rng));
  auto m = sample(psi, xs);
  auto rep2 = check_map(m, 2);
  EXPECT_EQ(rep2.status, MapStatus::LocalAutomorphismEvidence) << rep2.summary;
  expect_sound(rep2, m);

  auto u = GroupTag::parse("u-3");
  auto chi = Automorphism::build(u, Kind::Standard, random_unitary(3, rng), Sigma::Id);
  xs.clear();
  for (int i = 0; i < 3; ++i) xs.push_back(random_unitary(3, rng));
  auto m3 = sample(chi, xs);
  auto rep3 = check_map(m3, 2);
  EXPECT_EQ(rep3.status, MapStatus::LocalAutomorphismEvidence) << rep3.summary;
  expect_sound(rep3, m3);
  // A spectrum change on one output is refuted.
  m3.pairs[0].out = MatC(random_unitary(3, rng));
  EXPECT_EQ(check_map(m3, 2).status, MapStatus::Refuted);
}

TEST(LocalCheck, UnitaryNontrivialCharacterIsInconclusive) {
  Rng rng(48);
  auto u = GroupTag::parse("u-3");
  auto lat = CircleLattice::make({AngleGen::symbolic("a", 1.0)});
  auto g = MulFunc::circle_hom(circle_hom(lat, {CircleElem{{q(1)}}}));
  ASSERT_TRUE(check_Mu(g, 3).yes);
  auto chi = Automorphism::build(u, Kind::Standard, MatC::identity(3), Sigma::Id, g);
  std::vector<AnyMatrix> xs;
  for (long k : {1L, 2L}) {
    MatC d = MatC::identity(3);
    d(0, 0) = std::polar(1.0, static_cast<double>(k));
    xs.push_back(random_special_unitary(3, rng) * d);
  }
  auto rep = check_map(sample(chi, xs), 1);
  EXPECT_EQ(rep.status, MapStatus::Inconclusive) << rep.summary;
}

TEST(LocalCheck, Errors) {
  MatQ a = MatQ::identity(3);
  SampleMap one{kSL3, {{a, a}}};
  try {
    check_map(one, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
  }
  MatQ notsl = MatQ::diagonal({q(2), q(1), q(1)});
  EXPECT_THROW(check_pair(kSL3, {a, a}, {notsl, notsl}, 0), Error);
  EXPECT_THROW(check_pair(kSL3, {a, a}, {a, a}, 0), Error);
}

TEST(LocalCheck, DeterministicAcrossThreads) {
  Rng rng(49);
  auto phi = Automorphism::build(kSL3, Kind::Standard, random_gl_q(3, rng), Sigma::Id);
  auto m = sample(phi, sl_q_samples(3, 5, rng));
  m.pairs[1].out = MatQ(MatQ::diagonal({q(3), q(1, 3), q(1)}));
  LocalCheckOptions one, many;
  many.threads = 3;
  auto r1 = check_map(m, 9, one), r2 = check_map(m, 9, many);
  ASSERT_EQ(r1.pairs.size(), r2.pairs.size());
  for (std::size_t k = 0; k < r1.pairs.size(); ++k) {
    EXPECT_EQ(r1.pairs[k].status, r2.pairs[k].status);
    EXPECT_EQ(r1.pairs[k].reason, r2.pairs[k].reason);
  }
  EXPECT_EQ(r1.summary, r2.summary);
}
