// SL(R or C, n) from line images: tau on the standard lines, sum lines and
// the all-ones line, sigma from a line with entry i, and the W T = d I step.
#include "locaut/matrix/linalg.hpp"
#include "locaut/matrix/polynomial.hpp"
#include "locaut/recover/lemmas.hpp"
#include "session.hpp"

namespace locaut {

namespace {

using G = GaussRational;
using Vec = std::vector<G>;

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec e(n, G(0));
  e[i] = G(1);
  return e;
}

Vec first_nonzero_column(const MatG& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec c = m.column_vector(j);
    for (const auto& x : c)
      if (!x.is_zero()) return c;
  }
  return {};
}

bool vec_proportional(const Vec& a, const Vec& b) {
  return proportional(MatG::column(a), MatG::column(b));
}

Vec axpy(const G& a, const Vec& x, const G& b, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// (alpha, beta) with u = alpha v + beta w, or nullopt.
std::optional<std::pair<G, G>> coefficients(const Vec& v, const Vec& w, const Vec& u) {
  MatG sys(v.size(), 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    sys(i, 0) = v[i];
    sys(i, 1) = w[i];
  }
  auto sol = solve(sys, u);
  if (!sol) return std::nullopt;
  return std::make_pair((*sol)[0], (*sol)[1]);
}

}  // namespace

RecoveryReport recover_SLn_common(Oracle& o, std::uint64_t seed, const RecoverOptions& opts) {
  const GroupTag g = o.group();
  if (g.family != Family::SL)
    throw Error(ErrorCode::BadParameters, "recover_SLn_common needs an oracle on SL(R or C, n), got " + g.str());
  return detail::run_engine("recover_SLn_common", o, opts, [&](detail::Session& s) {
    const std::size_t n = g.n;
    auto raw = [&](const MatG& a) {
      AnyMatrix q = g.field == Field::R ? narrow_real(AnyMatrix(a)) : AnyMatrix(a);
      return detail::exact_image<G>(s.ask(q, g));
    };

    // Kind from one probe.
    MatG e0 = make_E(RankOneIdem<G>{unit_vec(n, 0), unit_vec(n, 0)});
    auto cp = charpoly(raw(e0));
    Kind kind = Kind::Standard;
    if (cp == charpoly(e0)) kind = Kind::Standard;
    else if (cp == charpoly(inverse(e0))) kind = Kind::Contragredient;
    else s.require("kind dichotomy", false, "the image of the probe has neither spectrum", ErrorCode::OracleFailure);
    s.report().checks.push_back({"kind dichotomy", true, std::string(kind_name(kind))});
    s.report().kind = kind;

    const G scale = (G(e_small(n)) - G(2)).inverse();
    const MatG id = MatG::identity(n);
    // xi(P), after the contragredient is undone.
    auto xi = [&](const Vec& x, const Vec& y) {
      MatG img = raw(make_E(RankOneIdem<G>{x, y}));
      if (kind == Kind::Contragredient) img = inverse(img).transpose();
      MatG q = (img - id * G(2)) * scale;
      if (!(q * q == q) || !(q.trace() == G(1)) || rank(q) != 1)
        s.require("idempotent preservation", false, "xi(P) is not a rank-one idempotent", ErrorCode::OracleFailure);
      return q;
    };

    // Standard lines.
    std::vector<MatG> xis;
    std::vector<Vec> v;
    for (std::size_t k = 0; k < n; ++k) {
      xis.push_back(xi(unit_vec(n, k), unit_vec(n, k)));
      v.push_back(first_nonzero_column(xis.back()));
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (j != k && !(xis[j] * xis[k]).is_zero())
          s.require("orthogonality transfer", false, "xi(E_jj) xi(E_kk) != 0", ErrorCode::OracleFailure);
    s.report().checks.push_back({"orthogonality transfer", true, "xi(E_jj) xi(E_kk) = 0 for j != k"});

    // Sum lines fix the column ratios; the remaining ones cross-check them.
    std::vector<G> c(n, G(1));
    auto sum_line = [&](std::size_t j, std::size_t k) {
      Vec x = unit_vec(n, j);
      x[k] = G(1);
      Vec u = first_nonzero_column(xi(x, unit_vec(n, j)));
      auto ab = coefficients(v[j], v[k], u);
      if (!ab || ab->first.is_zero() || ab->second.is_zero())
        s.require("collinearity", false, "tau([e_j + e_k]) is not a proper point of tau([e_j]) + tau([e_k])",
                  ErrorCode::OracleFailure);
      return ab->second / ab->first;
    };
    for (std::size_t k = 1; k < n; ++k) c[k] = sum_line(0, k);
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!(sum_line(j, k) == c[k] / c[j]))
          s.require("cross-ratio consistency", false, "line [e_j + e_k] disagrees with the ratios from [e_1 + e_k]",
                    ErrorCode::OracleFailure);
    s.report().checks.push_back({"cross-ratio consistency", true, "all sum lines agree"});
    std::vector<Vec> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = axpy(c[k], v[k], G(0), v[k]);
    Vec ones_image(n, G(0));
    for (std::size_t k = 0; k < n; ++k) ones_image = axpy(G(1), ones_image, G(1), t[k]);
    s.require("all-ones line", vec_proportional(first_nonzero_column(xi(Vec(n, G(1)), unit_vec(n, 0))), ones_image),
              "tau([1,...,1]) is not the line of the sum of the columns", ErrorCode::OracleFailure);

    // sigma from the line [e_1 + i e_2].
    Sigma sigma = Sigma::Id;
    if (g.field == Field::C) {
      Vec x = unit_vec(n, 0);
      x[1] = G::i();
      Vec u = first_nonzero_column(xi(x, unit_vec(n, 0)));
      if (vec_proportional(u, axpy(G(1), t[0], G::i(), t[1]))) sigma = Sigma::Id;
      else if (vec_proportional(u, axpy(G(1), t[0], -G::i(), t[1]))) sigma = Sigma::Conj;
      else s.require("sigma probe", false, "tau([e_1 + i e_2]) matches neither id nor conj", ErrorCode::SigmaUndetermined);
      s.report().checks.push_back({"sigma probe", true, std::string(sigma_name(sigma))});
    }
    s.report().sigma = sigma;

    MatG tm(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) tm(i, k) = t[k][i];
    s.require("T invertible", !det(tm).is_zero(), "recovered columns are dependent", ErrorCode::OracleFailure);

    // Rows of xi(E_kk) give W; W T must be d I, and each row is the functional
    // e_k^t T^{-1} up to the constant of the kernel-equal lemma.
    MatG tinv = inverse(tm);
    MatG w(n, n);
    std::vector<G> consts(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = 0;
      while (t[k][i].is_zero()) ++i;
      Vec r = xis[k].row_vector(i);
      for (auto& x : r) x = x / t[k][i];
      if (!(MatG::column(t[k]) * MatG::from_rows({r}) == xis[k]))
        s.require("W T = d I", false, "xi(E_kk) is not t_k r_k", ErrorCode::OracleFailure);
      for (std::size_t j = 0; j < n; ++j) w(k, j) = r[j];
      auto ck = kernel_equal_constant(tinv.row_vector(k), r, Sigma::Id);
      if (!ck) s.require("kernel-equal constant", false, "kernels differ", ErrorCode::OracleFailure);
      consts[k] = *ck;
    }
    MatG wt = w * tm;
    G d;
    bool scalar = is_scalar_matrix(wt, 0.0, &d);
    s.require("W T = d I", scalar, scalar ? "d = " + d.str() : "W T is not a scalar matrix", ErrorCode::OracleFailure);
    bool consts_ok = true;
    for (const auto& x : consts) consts_ok = consts_ok && x == d;
    s.require("kernel-equal constant", consts_ok, "c = phi2(u) reproduces d on every row", ErrorCode::OracleFailure);

    MatG tfinal = kind == Kind::Standard ? tm : inverse(tm).transpose();
    AnyMatrix tn = normalize_T(g.field == Field::R ? narrow_real(AnyMatrix(tfinal)) : AnyMatrix(tfinal));
    s.report().t = tn;
    auto phi = Automorphism::build(g, kind, tn, sigma);
    s.report().recovered = phi;
    detail::residual_check(
        s, phi,
        [&](Rng& r) -> AnyMatrix {
          if (g.field == Field::R) return random_sl_q(n, r);
          return random_sl_g(n, r);
        },
        opts.residual_samples, opts.tol, derive_seed(seed, 9));
  });
}

}  // namespace locaut
