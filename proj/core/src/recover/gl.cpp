// GL(R, n): (T, kind) from the SL restriction, then the scalar f(d) read off
// probes of determinant d.
#include <sstream>

#include "locaut/matrix/linalg.hpp"
#include "locaut/scalar/classes.hpp"
#include "session.hpp"

namespace locaut {

namespace {

// lambda with y = lambda m (exact), or nullopt.
std::optional<Rational> ratio(const MatQ& y, const MatQ& m) {
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    if (m.data()[k].is_zero()) continue;
    Rational l = y.data()[k] / m.data()[k];
    if (l.is_zero() || !(y == m * l)) return std::nullopt;
    return l;
  }
  return std::nullopt;
}

ScaledMatrix scaled_product(const ScaledMatrix& a, const ScaledMatrix& b) {
  return ScaledMatrix::make(a.scale * b.scale, any_mul(a.m, b.m));
}

}  // namespace

RecoveryReport recover_GLnR(Oracle& o, const std::vector<Rational>& dets, std::uint64_t seed,
                            const RecoverOptions& opts) {
  const GroupTag g = o.group();
  if (g.family != Family::GL || g.field != Field::R)
    throw Error(ErrorCode::BadParameters, "recover_GLnR needs an oracle on GL(R, n), got " + g.str());
  if (dets.empty()) throw Error(ErrorCode::BadParameters, "recover_GLnR needs at least one determinant");
  for (const auto& d : dets)
    if (d.is_zero()) throw Error(ErrorCode::ZeroInput, "determinant 0 requested");
  if (opts.probes_per_det == 0) throw Error(ErrorCode::BadParameters, "probes_per_det must be positive");

  return detail::run_engine("recover_GLnR", o, opts, [&](detail::Session& s) {
    const std::size_t n = g.n;
    auto& rep = s.report();
    detail::SlStage st;
    try {
      st = detail::sl_short_stage(s, detail::restricted(g), seed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded) throw;
      throw Error(ErrorCode::SLRecoveryFailed, std::string(error_code_name(e.code())) + ": " + e.detail());
    }
    rep.kind = st.kind;
    rep.sigma = Sigma::Id;
    rep.t = AnyMatrix(st.t);
    auto core = Automorphism::build(g, st.kind, st.t, Sigma::Id);

    // f(d) from phi(B) = f(d) T K(B) T^{-1} with det B = d.
    Rng rng(derive_seed(seed, 3));
    ScalarTable table;
    std::vector<Rational> readable;
    std::vector<std::pair<MatQ, ScaledMatrix>> probes;
    for (const auto& d : dets) {
      FEntry entry{d, std::nullopt, ""};
      for (std::size_t p = 0; p < opts.probes_per_det; ++p) {
        MatQ b = random_gl_q_with_det(n, d, rng);
        ScaledMatrix y;
        try {
          y = s.ask(b, g);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotRepresentable && e.code() != ErrorCode::OracleFailure) throw;
          entry.note = "IrrationalRootUnsupported: " + e.detail();
          break;
        }
        if (regime_of(y.m) != Regime::QR) {
          entry.note = "IrrationalRootUnsupported: image of a probe is not exact";
          break;
        }
        auto l = ratio(std::get<MatQ>(y.m), std::get<MatQ>(core.apply(b)));
        if (!l)
          throw Error(ErrorCode::FTableInconsistent,
                      "phi(B) is not a multiple of T K(B) T^-1 for a probe of determinant " + d.str());
        SignedFactored f = y.scale * factor(*l);
        if (entry.value && !(*entry.value == f))
          throw Error(ErrorCode::FTableInconsistent, "two probes of determinant " + d.str() + " give " +
                                                         entry.value->str() + " and " + f.str());
        entry.value = f;
        probes.emplace_back(b, y);
      }
      if (!entry.note.empty()) rep.notes.push_back("det " + d.str() + ": " + entry.note);
      if (entry.value) {
        table.push_back({factor(d), *entry.value});
        readable.push_back(d);
      }
      rep.f_table.push_back(entry);
    }
    if (table.empty()) throw Error(ErrorCode::IrrationalRootUnsupported, "no determinant could be read exactly");

    const int eps = kind_sign(st.kind);
    auto dom = check_LMr_on_domain(table, n, eps);
    std::string bad;
    for (const auto& pc : dom.pairs)
      if (!pc.ok && bad.empty())
        bad = "points " + table[pc.i].x.str() + ", " + table[pc.j].x.str() + ": " + pc.reason;
    s.require("pairwise class conditions", dom.all_ok,
              dom.all_ok ? std::to_string(dom.pairs.size()) + " pairs" : bad, ErrorCode::FTableInconsistent);

    auto ext = interpolating_character(table, n, eps);
    if (!ext.witness) {
      rep.local_not_global = true;
      rep.notes.push_back("local-not-global: " + ext.reason);
      // The homomorphism law on products of probes.
      std::size_t tested = 0, violations = 0;
      for (std::size_t i = 0; i < probes.size() && tested < opts.homomorphism_pairs; ++i)
        for (std::size_t j = i + 1; j < probes.size() && tested < opts.homomorphism_pairs; ++j) {
          MatQ prod = probes[i].first * probes[j].first;
          ScaledMatrix got;
          try {
            got = s.ask(prod, g);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::NotRepresentable && e.code() != ErrorCode::OracleFailure) throw;
            continue;
          }
          ++tested;
          if (!scaled_equal(got, scaled_product(probes[i].second, probes[j].second), opts.tol)) ++violations;
        }
      rep.checks.push_back({"homomorphism residual", violations == 0,
                            std::to_string(violations) + " of " + std::to_string(tested) + " products violate phi(AB) = phi(A) phi(B)"});
      rep.residual_samples = tested;
      rep.residual_failures = violations;
      rep.residual_pass = false;
      throw Error(ErrorCode::ResidualFail, "no single character reproduces the pairwise-consistent f-table: " + ext.reason);
    }
    rep.checks.push_back({"interpolating character", true, MulFunc::real_hom(*ext.witness).describe()});

    auto phi = Automorphism::build(g, st.kind, st.t, Sigma::Id, MulFunc::real_hom(*ext.witness));
    rep.recovered = phi;
    // Mixed determinants: products and quotients of the tabulated ones, and 1.
    detail::residual_check(
        s, phi,
        [&](Rng& r) -> AnyMatrix {
          Rational d(1);
          long pick = r.uniform_int(0, 3);
          if (pick > 0) d = readable[static_cast<std::size_t>(r.uniform_int(0, static_cast<long>(readable.size()) - 1))];
          if (pick > 1) {
            const Rational& e = readable[static_cast<std::size_t>(r.uniform_int(0, static_cast<long>(readable.size()) - 1))];
            d = pick == 2 ? d * e : d / e;
          }
          return random_gl_q_with_det(n, d, r);
        },
        opts.residual_samples, opts.tol, derive_seed(seed, 9));
  });
}

}  // namespace locaut
