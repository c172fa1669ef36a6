// SL(R, n) from the images of a spanning basis: trace preservation, the
// linear extension psi and idempotent images.
#include <sstream>

#include "locaut/matrix/linalg.hpp"
#include "locaut/matrix/polynomial.hpp"
#include "locaut/matrix/similarity.hpp"
#include "session.hpp"

namespace locaut {
namespace detail {

namespace {

std::vector<Rational> unit_vec(std::size_t n, std::size_t i) {
  std::vector<Rational> e(n, Rational(0));
  e[i] = Rational(1);
  return e;
}

// E_ii and (e_i + e_j) e_i^t for j != i: n^2 idempotents spanning M_n.
std::vector<RankOneIdem<Rational>> spanning_idempotents(std::size_t n) {
  std::vector<RankOneIdem<Rational>> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({unit_vec(n, i), unit_vec(n, i)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto x = unit_vec(n, i);
      x[j] = Rational(1);
      out.push_back({x, unit_vec(n, i)});
    }
  return out;
}

bool is_rank_one_idempotent(const MatQ& p) { return p * p == p && p.trace() == Rational(1) && rank(p) == 1; }

std::string pos(std::size_t j, std::size_t k) { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

}  // namespace

SlStage sl_short_stage(Session& s, const GroupTag& sl, std::uint64_t seed) {
  const std::size_t n = sl.n;
  SlStage out;

  // Kind from the spectrum of one probe.
  MatQ e0 = make_E(RankOneIdem<Rational>{unit_vec(n, 0), unit_vec(n, 0)});
  MatQ m0 = exact_image<Rational>(s.ask(e0, sl));
  auto cp = charpoly(m0);
  if (cp == charpoly(e0)) {
    out.kind = Kind::Standard;
  } else if (cp == charpoly(inverse(e0))) {
    out.kind = Kind::Contragredient;
  } else {
    s.require("kind dichotomy", false, "the image of the probe has neither spectrum", ErrorCode::OracleFailure);
  }
  s.report().checks.push_back({"kind dichotomy", true, std::string(kind_name(out.kind))});
  s.report().kind = out.kind;
  auto prime = [&](const MatQ& img) { return out.kind == Kind::Standard ? img : inverse(img).transpose(); };
  auto ask = [&](const MatQ& a) { return prime(exact_image<Rational>(s.ask(a, sl))); };

  // Basis images and their trace Gram.
  auto basis = build_basis(BasisKind::B, n);
  std::vector<MatQ> images;
  for (const auto& b : basis) images.push_back(ask(b));
  MatQ gram = trace_gram(basis), gram_img = trace_gram(images);
  s.require("trace Gram nonsingular", !det(gram_img).is_zero(), "images of the basis are linearly dependent",
            ErrorCode::GramSingular);
  std::string where;
  for (std::size_t j = 0; j < gram.rows() && where.empty(); ++j)
    for (std::size_t k = 0; k < gram.cols() && where.empty(); ++k)
      if (!(gram(j, k) == gram_img(j, k)))
        where = "tr(phi(B_j) phi(B_k)) != tr(B_j B_k) at " + pos(j, k) + ": " + gram_img(j, k).str() + " vs " +
                gram(j, k).str();
  s.require("trace Gram preserved", where.empty(), where, ErrorCode::GramSingular);

  // psi: linear extension of B_k -> phi(B_k); coordinates from the Gram.
  MatQ gram_inv = inverse(gram);
  auto psi = [&](const MatQ& x) {
    std::vector<Rational> t(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) t[j] = (x * basis[j]).trace();
    MatQ acc(n, n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Rational c(0);
      for (std::size_t j = 0; j < basis.size(); ++j) c += gram_inv(k, j) * t[j];
      if (!c.is_zero()) acc += images[k] * c;
    }
    return acc;
  };
  Rng rng(derive_seed(seed, 1));
  for (std::size_t i = 0; i < s.opts().welldef_samples; ++i) {
    MatQ a = random_sl_q(n, rng);
    if (!(psi(a) == ask(a)))
      s.require("psi well defined", false, "psi(A) != phi(A) on random sample " + std::to_string(i),
                ErrorCode::ResidualFail);
  }
  s.report().checks.push_back(
      {"psi well defined", true, std::to_string(s.opts().welldef_samples) + " random combinations agree"});

  // psi(P) from psi(E_P) = a psi(P) + 2 (psi(I) - psi(P)).
  MatQ psi_i = psi(MatQ::identity(n));
  s.require("psi(I) = I", psi_i == MatQ::identity(n), "the extension moves the identity", ErrorCode::OracleFailure);
  const Rational a = e_small(n);
  const Rational scale = (a - Rational(2)).inverse();
  MatrixPairs<Rational> pairs, transposed;
  for (const auto& p : spanning_idempotents(n)) {
    MatQ pm = p.matrix();
    MatQ q = (psi(make_E(p)) - psi_i * Rational(2)) * scale;
    if (!is_rank_one_idempotent(q))
      s.require("idempotent preservation", false, "psi(P) is not a rank-one idempotent", ErrorCode::OracleFailure);
    pairs.emplace_back(pm, q);
    transposed.emplace_back(pm.transpose(), q);
  }
  s.report().checks.push_back({"idempotent preservation", true, std::to_string(pairs.size()) + " idempotents"});

  // T' with T' P = psi(P) T'.
  auto sols = intertwiner_basis(pairs);
  if (sols.size() != 1) {
    std::string detail = "the idempotent images admit " + std::to_string(sols.size()) + " independent intertwiners";
    if (sols.empty() && intertwiner_basis(transposed).size() == 1) {
      // psi(P) = S P^t S^{-1}: the unipotent/diagonal pair cannot be matched.
      MatQ u = MatQ::identity(n);
      u(0, 1) = Rational(1);
      std::vector<Rational> d(n, Rational(1));
      d[0] = Rational(2);
      d[1] = Rational(1, 2);
      MatQ dm = MatQ::diagonal(d);
      SamplePair pu{u, s.ask(u, sl)}, pd{dm, s.ask(dm, sl)};
      auto v = check_pair(sl, pu, pd, derive_seed(seed, 2));
      detail = "psi has the transpose form; the pair (I + E_12, D) is " + std::string(pair_status_name(v.status));
      s.require("transpose form excluded", false, detail, ErrorCode::OracleFailure);
    }
    s.require("unique intertwiner", false, detail, ErrorCode::OracleFailure);
  }
  MatQ tp = sols[0];
  s.require("T invertible", !det(tp).is_zero(), "the intertwiner is singular", ErrorCode::OracleFailure);
  s.report().checks.push_back({"unique intertwiner", true, "T P = psi(P) T has a one-dimensional solution space"});
  MatQ t = out.kind == Kind::Standard ? tp : inverse(tp).transpose();
  out.t = std::get<MatQ>(normalize_T(t));
  return out;
}

}  // namespace detail

RecoveryReport recover_SLnR_short(Oracle& o, std::uint64_t seed, const RecoverOptions& opts) {
  const GroupTag g = o.group();
  if (g.family != Family::SL || g.field != Field::R)
    throw Error(ErrorCode::BadParameters, "recover_SLnR_short needs an oracle on SL(R, n), got " + g.str());
  return detail::run_engine("recover_SLnR_short", o, opts, [&](detail::Session& s) {
    auto st = detail::sl_short_stage(s, g, seed);
    s.report().t = st.t;
    s.report().sigma = Sigma::Id;
    auto phi = Automorphism::build(g, st.kind, st.t, Sigma::Id);
    s.report().recovered = phi;
    detail::residual_check(
        s, phi, [&](Rng& r) -> AnyMatrix { return random_sl_q(g.n, r); }, opts.residual_samples, opts.tol,
        derive_seed(seed, 9));
  });
}

}  // namespace locaut
