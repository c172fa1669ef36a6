#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"
#include "locaut/recover/lemmas.hpp"
#include "locaut/recover/recover.hpp"
#include "locaut/scalar/classes.hpp"
#include "oracles.hpp"

using namespace locaut;

namespace {
Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

MatQ diag_q(std::vector<Rational> d) { return MatQ::diagonal(d); }

// Ratio of `got` to `want` is c I for some nonzero c.
template <class S>
bool scalar_multiple(const Matrix<S>& got, const Matrix<S>& want) {
  S c;
  return is_scalar_matrix(got * inverse(want), 0.0, &c) && !c.is_zero();
}

bool scalar_multiple_any(const AnyMatrix& got, const AnyMatrix& want) {
  if (regime_of(got) == Regime::QR && regime_of(want) == Regime::QR)
    return scalar_multiple(std::get<MatQ>(got), std::get<MatQ>(want));
  return scalar_multiple(as_regime<GaussRational>(got), as_regime<GaussRational>(want));
}

// ||T T0^* - e^{i theta} I|| after aligning the phase on the (0,0) entry.
double phase_distance(const MatC& t, const MatC& t0) {
  MatC p = t * t0.adjoint();
  Complex ph = p(0, 0) / std::abs(p(0, 0));
  return max_abs_diff(p, MatC::identity(t.rows()) * ph);
}

RecoverOptions opts100() {
  RecoverOptions o;
  o.residual_samples = 100;
  o.budget = 1000;
  return o;
}

template <class S>
bool dependent_vectors(const std::vector<S>& u, const std::vector<S>& v) {
  Matrix<S> m(u.size(), 2);
  for (std::size_t i = 0; i < u.size(); ++i) {
    m(i, 0) = u[i];
    m(i, 1) = v[i];
  }
  return oracle::minor_rank(m) < 2;
}

template <class S>
std::vector<S> mat_vec(const Matrix<S>& a, const std::vector<S>& x) {
  return (a * Matrix<S>::column(x)).column_vector(0);
}

}  // namespace

// ---- lemma helpers -------------------------------------------------------

TEST(Lemmas, LindepExamples) {
  MatQ b = random_gl_q(3, *std::make_unique<Rng>(1));
  auto r = lindep_detector(MatQ(b * q(2)), b, 10, 1);
  ASSERT_TRUE(std::holds_alternative<GloballyDependent<Rational>>(r));
  EXPECT_EQ(std::get<GloballyDependent<Rational>>(r).lambda, q(2));

  auto r2 = lindep_detector(diag_q({q(1), q(2), q(3)}), MatQ::identity(3), 10, 1);
  ASSERT_TRUE(std::holds_alternative<Independent<Rational>>(r2));
  EXPECT_EQ(std::get<Independent<Rational>>(r2).x, (std::vector<Rational>{q(1), q(1), q(0)}));

  auto r3 = lindep_detector(b, b, 10, 1);
  ASSERT_TRUE(std::holds_alternative<GloballyDependent<Rational>>(r3));
  EXPECT_EQ(std::get<GloballyDependent<Rational>>(r3).lambda, q(1));

  EXPECT_THROW(lindep_detector(MatQ(3, 3), b, 4, 1), Error);
}

TEST(Lemmas, LindepAgreesWithExactRank) {
  Rng rng(7);
  int dep = 0, indep = 0;
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 3 + static_cast<std::size_t>(it % 2);
    MatQ b = random_gl_q(n, rng);
    MatQ a;
    switch (rng.uniform_int(0, 2)) {
      case 0: a = b * rng.small_rational(); break;
      case 1: a = random_gl_q(n, rng); break;
      default: {
        a = b;
        a(0, 0) += q(1);  // near miss
        if (det(a).is_zero()) a = b * q(3);
      }
    }
    // Oracle: A, B dependent iff the n^2 x 2 matrix of their entries has rank 1.
    MatQ stacked(n * n, 2);
    for (std::size_t k = 0; k < n * n; ++k) {
      stacked(k, 0) = a.data()[k];
      stacked(k, 1) = b.data()[k];
    }
    bool expect_dep = oracle::minor_rank(stacked) == 1;
    auto r = lindep_detector(a, b, 6, derive_seed(7, static_cast<std::uint64_t>(it)));
    if (auto* g = std::get_if<GloballyDependent<Rational>>(&r)) {
      ++dep;
      EXPECT_TRUE(expect_dep) << it;
      EXPECT_EQ(a, b * g->lambda);
    } else {
      ++indep;
      EXPECT_FALSE(expect_dep) << it;
      const auto& x = std::get<Independent<Rational>>(r).x;
      EXPECT_FALSE(dependent_vectors(mat_vec(a, x), mat_vec(b, x))) << it;
    }
  }
  EXPECT_GT(dep, 100);
  EXPECT_GT(indep, 100);
}

TEST(Lemmas, LindepWithConjugation) {
  Rng rng(11);
  for (int it = 0; it < 60; ++it) {
    MatG b = random_gl_g(3, rng);
    bool make_dep = it % 2 == 0;
    MatG a = make_dep ? MatG(b * rng.small_gauss()) : random_gl_g(3, rng);
    auto r = lindep_detector(a, b, 6, static_cast<std::uint64_t>(it), Sigma::Conj);
    if (make_dep) {
      ASSERT_TRUE(std::holds_alternative<GloballyDependent<GaussRational>>(r));
    } else if (auto* w = std::get_if<Independent<GaussRational>>(&r)) {
      MatG xs = MatG::column(w->x).conj();
      EXPECT_FALSE(dependent_vectors((a * xs).column_vector(0), (b * xs).column_vector(0)));
    }
  }
}

TEST(Lemmas, KernelEqualConstant) {
  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    std::vector<GaussRational> r1(4);
    for (auto& x : r1) x = rng.small_gauss(2, 2, false);
    if (std::all_of(r1.begin(), r1.end(), [](const GaussRational& x) { return x.is_zero(); })) continue;
    GaussRational c = rng.small_gauss();
    Sigma s = it % 2 ? Sigma::Conj : Sigma::Id;
    std::vector<GaussRational> r2(4);
    for (std::size_t k = 0; k < 4; ++k) r2[k] = c * (s == Sigma::Conj ? r1[k].conj() : r1[k]);
    auto got = kernel_equal_constant(r1, r2, s);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, c);
    // c = phi2(u) for any u with phi1(u) = 1.
    std::vector<GaussRational> u(4, GaussRational(0));
    std::size_t i = 0;
    while (r1[i].is_zero()) ++i;
    u[i] = r1[i].inverse();
    GaussRational phi2(0);
    for (std::size_t k = 0; k < 4; ++k) phi2 += r2[k] * (s == Sigma::Conj ? u[k].conj() : u[k]);
    EXPECT_EQ(phi2, c);
  }
  // Different kernels.
  EXPECT_FALSE(kernel_equal_constant<Rational>({q(1), q(0)}, {q(0), q(1)}).has_value());
}

TEST(Lemmas, IdempotentWithPrescribedTrace) {
  Rng rng(5);
  std::vector<MatQ> cs = {diag_q({q(1), q(1), q(2)}), MatQ::unit(3, 0, 1), random_gl_q(3, rng), random_sl_q(4, rng)};
  for (int it = 0; it < 40; ++it) cs.push_back(random_gl_q(3 + static_cast<std::size_t>(it % 2), rng));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Rational target = rng.small_rational(4, 3, false);
    auto p = idempotent_with_trace(cs[k], target, k);
    ASSERT_TRUE(p.has_value()) << k;
    MatQ pm = p->matrix();
    EXPECT_EQ(pm * pm, pm);
    EXPECT_EQ(oracle::minor_rank(pm), 1u);
    EXPECT_EQ((pm * cs[k]).trace(), target);
  }
  EXPECT_FALSE(idempotent_with_trace(MatQ(MatQ::identity(3) * q(5)), q(1), 1).has_value());
}

// ---- recover_SLnR_short ----------------------------------------------------

TEST(RecoverSLShort, Examples) {
  auto sl = GroupTag::parse("sl-r-3");
  AutomorphismOracle id(Automorphism::identity(sl));
  auto r = recover_SLnR_short(id, 1, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.kind, Kind::Standard);
  EXPECT_EQ(std::get<MatQ>(*r.t), MatQ::identity(3));
  EXPECT_EQ(r.residual_samples, 100u);
  ASSERT_NE(r.check("trace Gram preserved"), nullptr);
  EXPECT_TRUE(r.check("trace Gram preserved")->ok);

  MatQ t0 = MatQ::identity(3);
  t0(0, 1) = q(1);
  AutomorphismOracle conj(Automorphism::build(sl, Kind::Standard, t0, Sigma::Id));
  r = recover_SLnR_short(conj, 2, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_TRUE(scalar_multiple(std::get<MatQ>(*r.t), t0));

  AutomorphismOracle contra(Automorphism::build(sl, Kind::Contragredient, MatQ::identity(3), Sigma::Id));
  r = recover_SLnR_short(contra, 3, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.kind, Kind::Contragredient);
  EXPECT_EQ(std::get<MatQ>(*r.t), MatQ::identity(3));
}

TEST(RecoverSLShort, RoundTripRandomAutomorphisms) {
  Rng rng(21);
  for (int it = 0; it < 12; ++it) {
    auto g = GroupTag::parse(it % 3 == 2 ? "sl-r-4" : "sl-r-3");
    Kind kind = rng.coin() ? Kind::Contragredient : Kind::Standard;
    MatQ t0 = random_gl_q(g.n, rng);
    AutomorphismOracle o(Automorphism::build(g, kind, t0, Sigma::Id));
    auto opts = opts100();
    auto r = recover_SLnR_short(o, static_cast<std::uint64_t>(it), opts);
    ASSERT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(*r.kind, kind);
    EXPECT_TRUE(scalar_multiple(std::get<MatQ>(*r.t), t0));
    EXPECT_LE(r.queries_used, r.budget);
    // Pre-scaling T changes nothing.
    AutomorphismOracle o3(Automorphism::build(g, kind, MatQ(t0 * q(-3, 2)), Sigma::Id));
    auto r3 = recover_SLnR_short(o3, static_cast<std::uint64_t>(it), opts);
    ASSERT_TRUE(r3.ok());
    EXPECT_EQ(*r3.kind, kind);
    EXPECT_EQ(std::get<MatQ>(*r3.t), std::get<MatQ>(*r.t));
  }
}

TEST(RecoverSLShort, Refutations) {
  auto sl = GroupTag::parse("sl-r-3");
  // Transpose: an anti-automorphism that passes the trace-Gram check.
  FunctionOracle tr(sl, [](const AnyMatrix& a) { return ScaledMatrix(any_transpose(a)); }, "transpose");
  auto r = recover_SLnR_short(tr, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::OracleFailure);
  ASSERT_NE(r.check("transpose form excluded"), nullptr);
  EXPECT_NE(r.failure->detail.find("NotInterpolable"), std::string::npos) << r.failure->detail;
  ASSERT_NE(r.check("trace Gram preserved"), nullptr);
  EXPECT_TRUE(r.check("trace Gram preserved")->ok);

  // Squaring breaks the spectrum dichotomy.
  FunctionOracle sq(sl, [](const AnyMatrix& a) { return ScaledMatrix(any_mul(a, a)); }, "square");
  r = recover_SLnR_short(sq, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::OracleFailure);
  EXPECT_FALSE(r.recovered.has_value());

  // One basis image replaced by a conjugate: locally fine, globally not.
  auto basis = build_basis(BasisKind::B, 3);
  MatQ s = random_gl_q(3, *std::make_unique<Rng>(4));
  auto base = std::make_shared<AutomorphismOracle>(Automorphism::identity(sl));
  PatchedOracle patched(base, {SamplePair{basis[4], ScaledMatrix(MatQ(s * basis[4] * inverse(s)))}});
  r = recover_SLnR_short(patched, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_TRUE(r.failure->code == ErrorCode::GramSingular || r.failure->code == ErrorCode::ResidualFail)
      << r.summary();

  // Images outside the group.
  FunctionOracle out(sl, [](const AnyMatrix& a) { return ScaledMatrix(any_scale(a, q(2))); }, "double");
  r = recover_SLnR_short(out, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::NotInGroup);

  EXPECT_THROW(recover_SLnR_short(*std::make_unique<AutomorphismOracle>(Automorphism::identity(GroupTag::parse("gl-r-3"))), 1),
               Error);
}

TEST(RecoverSLShort, BudgetExceededKeepsPartialReport) {
  auto sl = GroupTag::parse("sl-r-3");
  AutomorphismOracle o(Automorphism::build(sl, Kind::Contragredient, MatQ::identity(3), Sigma::Id));
  RecoverOptions opts;
  opts.budget = 5;
  auto r = recover_SLnR_short(o, 1, opts);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::BudgetExceeded);
  EXPECT_EQ(r.queries_used, 5u);
  ASSERT_TRUE(r.kind.has_value());
  EXPECT_EQ(*r.kind, Kind::Contragredient);
  // The default budget suffices.
  EXPECT_TRUE(recover_SLnR_short(o, 1).ok());
  EXPECT_EQ(default_budget(3), 290u);
}

// ---- recover_SLn_common ----------------------------------------------------

TEST(RecoverSLCommon, Examples) {
  auto slc = GroupTag::parse("sl-c-3");
  AutomorphismOracle id(Automorphism::identity(slc));
  auto r = recover_SLn_common(id, 1, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.sigma, Sigma::Id);
  EXPECT_TRUE(scalar_multiple_any(*r.t, AnyMatrix(MatG::identity(3))));

  AutomorphismOracle bar(Automorphism::build(slc, Kind::Standard, MatG::identity(3), Sigma::Conj));
  r = recover_SLn_common(bar, 2, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.sigma, Sigma::Conj);
  EXPECT_TRUE(scalar_multiple_any(*r.t, AnyMatrix(MatG::identity(3))));

  auto slr = GroupTag::parse("sl-r-3");
  MatQ d = diag_q({q(1), q(2), q(3)});
  AutomorphismOracle dc(Automorphism::build(slr, Kind::Standard, d, Sigma::Id));
  r = recover_SLn_common(dc, 3, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_TRUE(scalar_multiple_any(*r.t, AnyMatrix(d)));
  for (const char* name : {"orthogonality transfer", "cross-ratio consistency", "W T = d I", "kernel-equal constant"}) {
    ASSERT_NE(r.check(name), nullptr) << name;
    EXPECT_TRUE(r.check(name)->ok) << name;
  }
}

TEST(RecoverSLCommon, RoundTripAndAgreementWithShortRoute) {
  Rng rng(33);
  for (int it = 0; it < 12; ++it) {
    bool complex = it % 2 == 1;
    auto g = GroupTag::parse(complex ? "sl-c-3" : (it % 4 == 2 ? "sl-r-4" : "sl-r-3"));
    Kind kind = rng.coin() ? Kind::Contragredient : Kind::Standard;
    Sigma sigma = complex && rng.coin() ? Sigma::Conj : Sigma::Id;
    AnyMatrix t0 = complex ? AnyMatrix(random_gl_g(g.n, rng)) : AnyMatrix(random_gl_q(g.n, rng));
    AutomorphismOracle o(Automorphism::build(g, kind, t0, sigma));
    auto r = recover_SLn_common(o, static_cast<std::uint64_t>(it), opts100());
    ASSERT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(*r.kind, kind);
    EXPECT_EQ(*r.sigma, sigma);
    EXPECT_TRUE(scalar_multiple_any(*r.t, t0));
    if (!complex) {
      auto rs = recover_SLnR_short(o, static_cast<std::uint64_t>(it), opts100());
      ASSERT_TRUE(rs.ok());
      EXPECT_TRUE(approx_equal(*rs.t, *r.t));
    }
  }
}

TEST(RecoverSLCommon, Refutation) {
  auto slr = GroupTag::parse("sl-r-3");
  FunctionOracle tr(slr, [](const AnyMatrix& a) { return ScaledMatrix(any_transpose(a)); }, "transpose");
  auto r = recover_SLn_common(tr, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_FALSE(r.ok());
}

// ---- recover_GLnR ----------------------------------------------------------

namespace {
std::vector<Rational> smooth_dets() {
  std::vector<Rational> out;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long s : {1L, -1L}) out.push_back(pow(q(2), a) * pow(q(3), b) * q(s));
  return out;
}

// phi(B) = f(det B) B inducing h(2) = 2, h(3) = 9, h(6) = 6 at n = 3.
std::shared_ptr<Oracle> gallery_like_oracle(std::size_t n) {
  auto g = GroupTag::make(Family::GL, Field::R, n);
  return std::make_shared<FunctionOracle>(
      g,
      [n](const AnyMatrix& a) {
        SignedFactored d = factor(det(std::get<MatQ>(a)));
        // 3^(b/n) on the line of 3, 1 on every other line.
        SignedFactored f;
        if (d.abs().exponents().size() == 1 && !d.exponent(mpz_class(3)).is_zero())
          f = factor(q(3)).pow(d.exponent(mpz_class(3)) / Rational(static_cast<long>(n)));
        return ScaledMatrix::make(f, a);
      },
      "gallery-like");
}
}  // namespace

TEST(RecoverGL, PowerCharactersRoundTrip) {
  Rng rng(41);
  auto dets = smooth_dets();
  for (long c : {0L, 1L, 2L}) {
    for (Kind kind : {Kind::Standard, Kind::Contragredient}) {
      auto g = GroupTag::parse("gl-r-3");
      MulFunc ch = MulFunc::power(Rational(c));
      MatQ t0 = random_gl_q(3, rng);
      auto phi = Automorphism::build(g, kind, t0, Sigma::Id, ch);
      AutomorphismOracle o(phi);
      auto opts = opts100();
      auto r = recover_GLnR(o, dets, static_cast<std::uint64_t>(c), opts);
      ASSERT_TRUE(r.ok()) << r.summary();
      EXPECT_EQ(*r.kind, kind);
      EXPECT_TRUE(scalar_multiple(std::get<MatQ>(*r.t), t0));
      ASSERT_EQ(r.f_table.size(), dets.size());
      for (const auto& e : r.f_table) {
        ASSERT_TRUE(e.value.has_value());
        EXPECT_EQ(*e.value, ch.eval_real(factor(e.det))) << e.det.str();
      }
    }
  }
}

TEST(RecoverGL, SpecExamples) {
  auto g = GroupTag::parse("gl-r-3");
  AutomorphismOracle id(Automorphism::identity(g));
  auto r = recover_GLnR(id, {q(1), q(16), q(-8)}, 1);
  ASSERT_TRUE(r.ok()) << r.summary();
  for (const auto& e : r.f_table) EXPECT_TRUE(e.value->is_one());

  AutomorphismOracle p1(Automorphism::build(g, Kind::Standard, MatQ::identity(3), Sigma::Id, MulFunc::power(q(1))));
  r = recover_GLnR(p1, {q(1), q(16), q(-8)}, 1);
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(r.f_table[1].value->to_rational(), q(16));
  EXPECT_EQ(r.f_table[2].value->to_rational(), q(8));
}

TEST(RecoverGL, LatticeCharacter) {
  auto g = GroupTag::parse("gl-r-3");
  auto lat = RealLattice::make(std::vector<Rational>{q(2), q(3)}, true);
  MulFunc ch = MulFunc::real_hom(hom_on_lattice(lat, std::vector<Rational>{q(2), q(1, 3)}, 1));
  ASSERT_TRUE(check_M1r(ch, 3).yes);
  MatQ t0 = random_gl_q(3, *std::make_unique<Rng>(9));
  AutomorphismOracle o(Automorphism::build(g, Kind::Standard, t0, Sigma::Id, ch));
  auto r = recover_GLnR(o, {q(2), q(3), q(-6), q(1, 2)}, 4, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  for (const auto& e : r.f_table) EXPECT_EQ(*e.value, ch.eval_real(factor(e.det)));
}

TEST(RecoverGL, LocalNotGlobal) {
  auto o = gallery_like_oracle(3);
  auto r = recover_GLnR(*o, {q(2), q(3), q(6)}, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::ResidualFail);
  EXPECT_TRUE(r.local_not_global);
  EXPECT_FALSE(r.recovered.has_value());
  ASSERT_NE(r.check("pairwise class conditions"), nullptr);
  EXPECT_TRUE(r.check("pairwise class conditions")->ok);
  ASSERT_NE(r.check("homomorphism residual"), nullptr);
  EXPECT_FALSE(r.check("homomorphism residual")->ok);
  EXPECT_EQ(r.f_table[0].value->to_rational(), q(1));
  EXPECT_EQ(*r.f_table[1].value, factor(q(3)).pow(q(1, 3)));
  // On {2, 27, -1} one character fits the table; the residual on mixed
  // determinants such as 54 still exposes the map.
  auto r2 = recover_GLnR(*o, {q(2), q(27), q(-1)}, 1);
  EXPECT_FALSE(r2.local_not_global);
  ASSERT_TRUE(r2.recovered.has_value());
  ASSERT_TRUE(r2.failure.has_value());
  EXPECT_EQ(r2.failure->code, ErrorCode::ResidualFail);
  EXPECT_GT(r2.residual_failures, 0u);
}

TEST(RecoverGL, InconsistentAndUnreadableTables) {
  auto g = GroupTag::parse("gl-r-3");
  // f(2) = 2 and f(4) = 1 violate the pairwise conditions.
  FunctionOracle bad(
      g,
      [](const AnyMatrix& a) {
        Rational d = det(std::get<MatQ>(a));
        Rational f = d == q(2) ? q(2) : q(1);
        return ScaledMatrix(any_scale(a, f));
      },
      "bad");
  auto r = recover_GLnR(bad, {q(2), q(4)}, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::FTableInconsistent) << r.summary();

  FunctionOracle partial(
      g,
      [](const AnyMatrix& a) {
        if (det(std::get<MatQ>(a)) == q(5)) throw Error(ErrorCode::NotRepresentable, "irrational");
        return ScaledMatrix(a);
      },
      "partial");
  r = recover_GLnR(partial, {q(2), q(5)}, 1);
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_FALSE(r.f_table[1].value.has_value());
  EXPECT_NE(r.f_table[1].note.find("IrrationalRootUnsupported"), std::string::npos);
  r = recover_GLnR(partial, {q(5)}, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::IrrationalRootUnsupported);

  FunctionOracle sl_broken(g, [](const AnyMatrix& a) { return ScaledMatrix(any_mul(a, a)); }, "square");
  r = recover_GLnR(sl_broken, {q(2)}, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::SLRecoveryFailed);
}

// ---- recover_SUn / recover_Un ------------------------------------------------

TEST(RecoverSU, Examples) {
  auto su = GroupTag::parse("su-3");
  AutomorphismOracle id(Automorphism::identity(su));
  auto r = recover_SUn(id, 1, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.sigma, Sigma::Id);
  EXPECT_LT(phase_distance(std::get<MatC>(*r.t), MatC::identity(3)), 1e-6);

  AutomorphismOracle bar(Automorphism::build(su, Kind::Standard, MatC::identity(3), Sigma::Conj));
  r = recover_SUn(bar, 2, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(*r.sigma, Sigma::Conj);
}

TEST(RecoverSU, RandomUnitaryConjugations) {
  Rng rng(51);
  for (int it = 0; it < 10; ++it) {
    auto su = GroupTag::parse(it % 3 == 2 ? "su-4" : "su-3");
    MatC t0 = random_unitary(su.n, rng);
    Sigma sigma = rng.coin() ? Sigma::Conj : Sigma::Id;
    AutomorphismOracle o(Automorphism::build(su, Kind::Standard, t0, sigma));
    auto r = recover_SUn(o, static_cast<std::uint64_t>(it), opts100());
    ASSERT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(*r.sigma, sigma);
    EXPECT_LT(phase_distance(std::get<MatC>(*r.t), t0), 1e-6);
    EXPECT_LT(unitarity_defect(std::get<MatC>(*r.t)), 1e-9);
  }
}

TEST(RecoverSU, Refutations) {
  auto su = GroupTag::parse("su-3");
  // Transpose has the right spectra but the wrong projection images.
  FunctionOracle tr(su, [](const AnyMatrix& a) { return ScaledMatrix(any_transpose(a)); }, "transpose");
  auto r = recover_SUn(tr, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::OracleFailure);
  ASSERT_NE(r.check("transpose form excluded"), nullptr);

  FunctionOracle sq(su, [](const AnyMatrix& a) { return ScaledMatrix(any_mul(a, a)); }, "square");
  r = recover_SUn(sq, 1);
  ASSERT_TRUE(r.failure.has_value());
}

TEST(RecoverU, CharacterOnCircleLattice) {
  auto u = GroupTag::parse("u-3");
  auto lat = CircleLattice::make({AngleGen::symbolic("a", 1.0), AngleGen::symbolic("b", std::sqrt(2.0))});
  AutomorphismOracle id(Automorphism::identity(u));
  auto r = recover_Un(id, lat, 1, opts100());
  ASSERT_TRUE(r.ok()) << r.summary();
  for (const auto& k : r.k_table) EXPECT_LT(std::abs(k.value - 1.0), 1e-8);

  Rng rng(61);
  for (int it = 0; it < 6; ++it) {
    std::vector<CircleElem> imgs = {CircleElem{{q(rng.uniform_int(-1, 1)), q(rng.uniform_int(-1, 1))}},
                                    CircleElem{{q(rng.uniform_int(-1, 1)), q(rng.uniform_int(-1, 1))}}};
    MulFunc ch = MulFunc::circle_hom(circle_hom(lat, imgs));
    if (!check_Mu(ch, 3).yes) continue;
    MatC t0 = random_unitary(3, rng);
    Sigma sigma = rng.coin() ? Sigma::Conj : Sigma::Id;
    auto phi = Automorphism::build(u, Kind::Standard, t0, sigma, ch);
    AutomorphismOracle o(phi);
    r = recover_Un(o, lat, static_cast<std::uint64_t>(it), opts100());
    ASSERT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(*r.sigma, sigma);
    EXPECT_LT(phase_distance(std::get<MatC>(*r.t), t0), 1e-6);
    for (const auto& k : r.k_table) EXPECT_LT(std::abs(k.value - ch.eval_circle(k.z)), 1e-8);
  }
}

TEST(RecoverU, ValueOutsideLattice) {
  auto u = GroupTag::parse("u-3");
  auto lat = CircleLattice::make({AngleGen::symbolic("a", 1.0)});
  // g(z) = e^{0.3 i arg z}: not a lattice element.
  FunctionOracle o(
      u,
      [](const AnyMatrix& a) {
        MatC m = as_regime<Complex>(a);
        double ang = std::arg(det(m));
        return ScaledMatrix(MatC(m * std::polar(1.0, 0.3 * ang)));
      },
      "twisted");
  auto r = recover_Un(o, lat, 1);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code, ErrorCode::DetOutsideLattice) << r.summary();
}
