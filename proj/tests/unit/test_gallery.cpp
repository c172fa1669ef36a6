#include <gtest/gtest.h>

#include <cmath>

#include "locaut/gallery/gallery.hpp"
#include "locaut/random.hpp"
#include "oracles.hpp"

using namespace locaut;

namespace {
Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

// f(det B) recomputed in floating point from one sample.
double numeric_f(const SamplePair& sp) {
  const MatQ& b = std::get<MatQ>(sp.in);
  MatC y = sp.out.numeric();
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (!b(r, c).is_zero()) return y(r, c).real() / b(r, c).to_double();
  return 0.0;
}

bool has_evidence(const Certificate& c, const std::string& id, bool holds) {
  const Evidence* e = c.find(id);
  return e && e->holds == holds;
}
}  // namespace

TEST(GalleryGL, LocalNotGlobalN3) {
  auto item = gallery_gl_local_not_global(3);
  const auto& c = item.certificate;
  const std::size_t k = item.samples.pairs.size();
  EXPECT_EQ(c.claim, Claim::IsLocalNotGlobal);
  ASSERT_EQ(c.pairs.size(), k * (k - 1) / 2);
  for (const auto& pv : c.pairs) EXPECT_EQ(pv.status, PairStatus::Interpolable) << pv.i << "," << pv.j << " " << pv.reason;
  EXPECT_TRUE(has_evidence(c, "all pairs interpolable", true));
  EXPECT_TRUE(has_evidence(c, "h(2) h(3) = h(6)", false));
  EXPECT_TRUE(has_evidence(c, "phi(AB) = phi(A) phi(B)", false));
  EXPECT_TRUE(has_evidence(c, "single automorphism matches all samples", false));

  // Independent recomputation of h(d) = f(d)^3 d in doubles.
  std::map<long, double> h;
  for (const auto& sp : item.samples.pairs) {
    double d = oracle::leibniz_det(std::get<MatQ>(sp.in)).to_double();
    h[std::lround(d * 1000)] = std::pow(numeric_f(sp), 3) * d;
  }
  ASSERT_TRUE(h.count(2000) && h.count(3000) && h.count(6000));
  EXPECT_NEAR(h[2000], 2, 1e-9);
  EXPECT_NEAR(h[3000], 9, 1e-9);
  EXPECT_NEAR(h[6000], 6, 1e-9);
  EXPECT_NEAR(h[2000] * h[3000], 18, 1e-9);

  // The det-6 sample is the product of the det-2 and det-3 samples.
  const auto& ps = item.samples.pairs;
  EXPECT_EQ(std::get<MatQ>(ps[0].in) * std::get<MatQ>(ps[1].in), std::get<MatQ>(ps[2].in));
  double lhs = numeric_f(ps[0]) * numeric_f(ps[1]), rhs = numeric_f(ps[2]);
  EXPECT_GT(std::abs(lhs - rhs), 0.1);
}

TEST(GalleryGL, CertificateReverifies) {
  GlGalleryOptions o;
  o.seed = 7;
  auto item = gallery_gl_local_not_global(4, o);
  auto again = certify_gl_samples(item.samples, o);
  EXPECT_EQ(again.claim, item.certificate.claim);
  ASSERT_EQ(again.evidence.size(), item.certificate.evidence.size());
  for (std::size_t i = 0; i < again.evidence.size(); ++i) {
    EXPECT_EQ(again.evidence[i].identity, item.certificate.evidence[i].identity);
    EXPECT_EQ(again.evidence[i].holds, item.certificate.evidence[i].holds);
  }
  // Same construction, different seed, same verdict.
  o.seed = 8;
  EXPECT_EQ(gallery_gl_local_not_global(4, o).certificate.claim, Claim::IsLocalNotGlobal);
}

TEST(GalleryGL, Variants) {
  GlGalleryOptions one;
  one.det_one = true;
  auto a = gallery_gl_local_not_global(3, one);
  EXPECT_EQ(a.certificate.claim, Claim::IsAutomorphism);
  for (const auto& sp : a.samples.pairs) EXPECT_TRUE(sp.out.is_plain());

  GlGalleryOptions odd;
  odd.odd_sign = true;
  auto b = gallery_gl_local_not_global(4, odd);
  EXPECT_EQ(b.certificate.claim, Claim::IsLocalNotGlobal);
  for (const auto& pv : b.certificate.pairs) EXPECT_EQ(pv.status, PairStatus::Interpolable) << pv.reason;
  EXPECT_LT(gallery_f(factor(q(-2)), 4, odd).to_double(), 0);
  try {
    gallery_gl_local_not_global(3, odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddN);
  }

  GlGalleryOptions other;
  other.p = q(5);
  other.q = q(7);
  auto c = gallery_gl_local_not_global(3, other);
  EXPECT_EQ(c.certificate.claim, Claim::IsLocalNotGlobal);
  EXPECT_TRUE(has_evidence(c.certificate, "h(5) h(7) = h(35)", false));
  EXPECT_THROW(gallery_gl_local_not_global(2), Error);
}

TEST(GalleryGL, RuleValues) {
  GlGalleryOptions o;
  EXPECT_TRUE(gallery_f(factor(q(2)), 3, o).is_one());
  EXPECT_TRUE(gallery_f(factor(q(6)), 3, o).is_one());
  EXPECT_NEAR(gallery_f(factor(q(9)), 3, o).to_double(), std::cbrt(9.0), 1e-12);
  EXPECT_NEAR(gallery_f(factor(q(-1, 3)), 3, o).to_double(), 1 / std::cbrt(3.0), 1e-12);
  EXPECT_THROW(gallery_f(factor(q(5)), 3, o), Error);
}

TEST(GalleryAdditive, DefaultViolatesAdditivity) {
  auto item = gallery_additive_R(2);
  const auto& c = item.certificate;
  EXPECT_EQ(c.claim, Claim::IsLocalNotGlobal);
  EXPECT_TRUE(has_evidence(c, "pairwise Q-linear bijections", true));
  EXPECT_TRUE(has_evidence(c, "single Q-linear bijection", false));
  const Evidence* v = c.find("phi(x + y) = phi(x) + phi(y)");
  ASSERT_TRUE(v);
  EXPECT_FALSE(v->holds);
  EXPECT_NE(v->detail.find("g1 + 2 g2"), std::string::npos) << v->detail;

  // Direct check of the exhibited triple.
  QVec g1{q(1), q(0)}, g2{q(0), q(1)}, s{q(1), q(1)};
  auto f1 = *item.map.eval(g1), f2 = *item.map.eval(g2), fs = *item.map.eval(s);
  EXPECT_EQ(f1, g1);
  EXPECT_EQ(f2, (QVec{q(0), q(2)}));
  EXPECT_EQ(fs, s);
  EXPECT_NE((QVec{f1[0] + f2[0], f1[1] + f2[1]}), fs);
}

TEST(GalleryAdditive, IdentityAndSwapAreGlobal) {
  auto id = gallery_additive_R(identity_additive_map(3));
  EXPECT_EQ(id.certificate.claim, Claim::IsAutomorphism);
  EXPECT_TRUE(has_evidence(id.certificate, "phi(x + y) = phi(x) + phi(y)", true));

  AdditiveMap swap;
  swap.k = 2;
  swap.labels = {"1", "sqrt2"};
  swap.lines = {{{q(1), q(0)}, {q(0), q(1)}}, {{q(0), q(1)}, {q(1), q(0)}}};
  auto sw = gallery_additive_R(swap);
  EXPECT_NE(sw.certificate.claim, Claim::PairwiseOnlyEvidence);
  EXPECT_TRUE(has_evidence(sw.certificate, "pairwise Q-linear bijections", true));
}

TEST(GalleryAdditive, RandomLineMapsArePairwiseValid) {
  // Any injective line map with nonzero scalings passes all pairs.
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    AdditiveMap m;
    m.k = 3;
    std::vector<QVec> reps = {{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(1), q(1), q(0)},
                              {q(1), q(-1), q(2)}};
    std::vector<QVec> imgs = reps;
    for (std::size_t i = imgs.size(); i > 1; --i)
      std::swap(imgs[i - 1], imgs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(i) - 1))]);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Rational s = rng.small_rational();
      QVec im = imgs[i];
      for (auto& x : im) x = x * s;
      m.lines.push_back({reps[i], im});
    }
    auto item = gallery_additive_R(m);
    EXPECT_TRUE(has_evidence(item.certificate, "pairwise Q-linear bijections", true));
    EXPECT_NE(item.certificate.claim, Claim::PairwiseOnlyEvidence);
  }
}

TEST(GalleryAdditive, Errors) {
  try {
    gallery_additive_R(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewGenerators);
  }
  AdditiveMap bad;
  bad.k = 2;
  bad.lines = {{{q(1), q(0)}, {q(1), q(0)}}, {{q(0), q(1)}, {q(2), q(0)}}};  // not injective on lines
  EXPECT_THROW(gallery_additive_R(bad), Error);
}

TEST(GallerySignTwist, EvenAndOdd) {
  auto item = gallery_sign_twist(4);
  EXPECT_EQ(item.certificate.claim, Claim::IsAutomorphism);
  MatQ a = MatQ::identity(4);
  a(0, 0) = q(-2);
  MatQ b = MatQ::identity(4);
  b(1, 1) = q(-3);
  auto img = [&](const MatQ& x) { return std::get<MatQ>(item.phi.apply(x)); };
  EXPECT_EQ(img(a), -a);
  EXPECT_EQ(img(a * b), a * b);
  EXPECT_EQ(img(a) * img(b), img(a * b));
  MatQ u = MatQ::identity(4) + MatQ::unit(4, 0, 3);
  EXPECT_EQ(img(u), u);
  try {
    gallery_sign_twist(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddN);
  }
}
