// SU_n and U_n: projection images from the unitary probes, a least-squares
// fit of T, and the character on a circle lattice.
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "locaut/matrix/linalg.hpp"
#include "locaut/scalar/classes.hpp"
#include "session.hpp"

namespace locaut {
namespace detail {

namespace {

constexpr double kFitTol = 1e-6;

bool spectrum_matches(std::vector<Complex> ev, std::vector<Complex> want, double tol) {
  for (const auto& w : want) {
    auto it = std::min_element(ev.begin(), ev.end(),
                               [&](const Complex& a, const Complex& b) { return std::abs(a - w) < std::abs(b - w); });
    if (it == ev.end() || std::abs(*it - w) > tol) return false;
    ev.erase(it);
  }
  return true;
}

std::vector<Complex> es_spectrum(const EsParams& p, std::size_t n, Sigma s) {
  Complex a = s == Sigma::Id ? p.alpha : std::conj(p.alpha);
  Complex b = s == Sigma::Id ? p.beta : std::conj(p.beta);
  std::vector<Complex> out(n, b);
  out[0] = a;
  return out;
}

// Projections onto e_k, (e_j + e_k)/sqrt2 and (e_j + i e_k)/sqrt2; they span M_n.
std::vector<MatC> spanning_projections(std::size_t n) {
  std::vector<MatC> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> v(n, 0.0);
    v[k] = 1.0;
    out.push_back(projection_onto(v));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      std::vector<Complex> v(n, 0.0);
      v[j] = 1.0;
      v[k] = 1.0;
      out.push_back(projection_onto(v));
      v[k] = Complex(0.0, 1.0);
      out.push_back(projection_onto(v));
    }
  return out;
}

struct Fit {
  MatC s;
  double residual = 0.0;  // smallest singular value, T of unit Frobenius norm
  double gap = 0.0;       // next singular value
};

// Least squares for T P_sigma = xi(P) T over the family.
Fit fit_T(const std::vector<MatC>& ps, const std::vector<MatC>& xis, Sigma sigma, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ps.size()) * nn, nn);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    MatC pm = ps[p].apply_sigma(sigma);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto row = static_cast<Eigen::Index>(p * n * n + i * n + j);
        for (std::size_t l = 0; l < n; ++l) {
          sys(row, static_cast<Eigen::Index>(i * n + l)) += pm(l, j);
          sys(row, static_cast<Eigen::Index>(l * n + j)) -= xis[p](i, l);
        }
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Fit f;
  f.residual = sv(nn - 1);
  f.gap = sv(nn - 2);
  f.s = MatC(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.s(a, b) = svd.matrixV()(static_cast<Eigen::Index>(a * n + b), nn - 1);
  return f;
}

bool fits(const Fit& f) { return f.residual <= kFitTol && f.gap > 1e3 * kFitTol; }

}  // namespace

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SuStage su_stage(Session& s, const GroupTag& su, std::uint64_t /*seed*/) {
  const std::size_t n = su.n;
  const EsParams es = default_es_params(n);
  auto askc = [&](const MatC& a) { return s.ask(AnyMatrix(a), su).numeric(); };

  // Global conj twist from one probe's spectrum.
  SuStage out;
  std::vector<Complex> e1(n, 0.0);
  e1[0] = 1.0;
  auto ev = eigenvalues(askc(make_Es(projection_onto(e1), es)));
  if (spectrum_matches(ev, es_spectrum(es, n, Sigma::Id), kFitTol)) out.sigma = Sigma::Id;
  else if (spectrum_matches(ev, es_spectrum(es, n, Sigma::Conj), kFitTol)) out.sigma = Sigma::Conj;
  else s.require("conj twist", false, "the probe image has neither {alpha, beta} nor its conjugate as spectrum",
                 ErrorCode::OracleFailure);
  s.report().checks.push_back({"conj twist", true, std::string(sigma_name(out.sigma))});
  s.report().sigma = out.sigma;
  s.report().kind = Kind::Standard;

  const auto spec = es_spectrum(es, n, out.sigma);
  const Complex a = spec[0], b = spec[1];
  auto ps = spanning_projections(n);
  std::vector<MatC> xis;
  const MatC id = MatC::identity(n);
  for (const auto& p : ps) {
    MatC q = (askc(make_Es(p, es)) - id * b) * (1.0 / (a - b));
    double defect = std::max({max_abs_diff(q * q, q), max_abs_diff(q, q.adjoint()), std::abs(q.trace() - 1.0)});
    if (defect > kFitTol)
      s.require("projection preservation", false, "xi(P) is not a rank-one projection (defect " + num(defect) + ")",
                ErrorCode::OracleFailure);
    xis.push_back(q);
  }
  double orth = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) orth = std::max(orth, (xis[j] * xis[k]).is_zero(kFitTol) ? 0.0 : 1.0);
  s.require("orthogonality transfer", orth == 0.0, "xi(P) xi(Q) = 0 for orthogonal standard projections",
            ErrorCode::OracleFailure);

  Fit f = fit_T(ps, xis, out.sigma, n);
  if (!fits(f)) {
    Fit other = fit_T(ps, xis, out.sigma == Sigma::Id ? Sigma::Conj : Sigma::Id, n);
    if (fits(other))
      s.require("transpose form excluded", false,
                "the projection images follow P -> T P^t T* while the spectrum shows no such twist",
                ErrorCode::OracleFailure);
    s.require("unitary fit", false, "fit residual " + num(f.residual) + ", gap " + num(f.gap),
              ErrorCode::NonUnitaryFit);
  }
  MatC sh = f.s.adjoint() * f.s;
  double tr = sh.trace().real();
  double defect = max_abs_diff(sh * Complex(static_cast<double>(n) / tr, 0.0), id);
  s.require("unitary fit", defect <= kFitTol,
            "residual " + num(f.residual) + ", unitarity defect " + num(defect), ErrorCode::NonUnitaryFit);
  out.t = std::get<MatC>(normalize_T(polar_unitary(f.s)));
  return out;
}

}  // namespace detail

RecoveryReport recover_SUn(Oracle& o, std::uint64_t seed, const RecoverOptions& opts) {
  const GroupTag g = o.group();
  if (g.family != Family::SUn) throw Error(ErrorCode::BadParameters, "recover_SUn needs an oracle on SU_n, got " + g.str());
  return detail::run_engine("recover_SUn", o, opts, [&](detail::Session& s) {
    auto st = detail::su_stage(s, g, seed);
    s.report().t = AnyMatrix(st.t);
    auto phi = Automorphism::build(g, Kind::Standard, st.t, st.sigma);
    s.report().recovered = phi;
    detail::residual_check(
        s, phi, [&](Rng& r) -> AnyMatrix { return random_special_unitary(g.n, r); }, opts.residual_samples,
        opts.numeric_tol, derive_seed(seed, 9));
  });
}

RecoveryReport recover_Un(Oracle& o, const CircleLattice& lattice, std::uint64_t seed, const RecoverOptions& opts) {
  const GroupTag g = o.group();
  if (g.family != Family::Un) throw Error(ErrorCode::BadParameters, "recover_Un needs an oracle on U_n, got " + g.str());
  if (lattice.rank() == 0) throw Error(ErrorCode::TooFewGenerators, "recover_Un needs a circle lattice of rank >= 1");
  return detail::run_engine("recover_Un", o, opts, [&](detail::Session& s) {
    const std::size_t n = g.n;
    auto& rep = s.report();
    auto st = detail::su_stage(s, detail::restricted(g), seed);
    rep.t = AnyMatrix(st.t);
    auto core = Automorphism::build(g, Kind::Standard, st.t, st.sigma);
    const double tol = opts.numeric_tol;

    // g(z) from phi(lambda A) = g(z) T (lambda A)_sigma T*, det((lambda A)_sigma) = z.
    Rng rng(derive_seed(seed, 3));
    auto probe_value = [&](const CircleElem& e) {
      Complex z = circle_value(lattice, e);
      Complex w = std::pow(z, 1.0 / static_cast<double>(n));
      Complex lambda = st.sigma == Sigma::Id ? w : std::conj(w);
      std::optional<Complex> val;
      for (int p = 0; p < 2; ++p) {
        MatC a = random_special_unitary(n, rng) * lambda;
        MatC y = s.ask(AnyMatrix(a), g).numeric();
        MatC m = as_regime<Complex>(core.apply(AnyMatrix(a)));
        Complex acc = 0.0;
        for (std::size_t k = 0; k < m.data().size(); ++k) acc += std::conj(m.data()[k]) * y.data()[k];
        Complex v = acc / Complex(static_cast<double>(n), 0.0);  // ||m||_F^2 = n
        if (max_abs_diff(y, m * v) > tol)
          s.require("scalar factorization", false, "phi(lambda A) is not a multiple of T (lambda A)_sigma T*",
                    ErrorCode::OracleFailure);
        if (val && std::abs(*val - v) > tol)
          s.require("scalar factorization", false, "two probes with one determinant give different scalars",
                    ErrorCode::OracleFailure);
        val = v;
      }
      return std::make_pair(z, *val);
    };

    std::vector<CircleElem> images;
    for (std::size_t j = 0; j < lattice.rank(); ++j) {
      CircleElem e{std::vector<Rational>(lattice.rank(), Rational(0))};
      e.v[j] = Rational(1);
      auto [z, v] = probe_value(e);
      auto im = decompose_circle(v, lattice, tol);
      rep.k_table.push_back({e, z, v, im});
      if (!im)
        throw Error(ErrorCode::DetOutsideLattice,
                    "g at generator " + lattice.generators[j].label + " is not a lattice element");
      images.push_back(*im);
    }
    MulFunc gf = MulFunc::circle_hom(circle_hom(lattice, images));
    auto cls = check_Mu(gf, n);
    s.require("circle class", cls.yes, cls.certificate, ErrorCode::FTableInconsistent);

    // Multiplicativity on combinations of the generators.
    std::vector<CircleElem> extra;
    for (std::size_t j = 0; j < lattice.rank(); ++j) {
      CircleElem e{std::vector<Rational>(lattice.rank(), Rational(0))};
      e.v[j] = Rational(-1);
      extra.push_back(e);
    }
    if (lattice.rank() >= 2) {
      CircleElem e{std::vector<Rational>(lattice.rank(), Rational(0))};
      e.v[0] = e.v[1] = Rational(1);
      extra.push_back(e);
    }
    double worst = 0.0;
    for (const auto& e : extra) {
      auto [z, v] = probe_value(e);
      Complex want = circle_value(lattice, gf.eval_circle_elem(e));
      worst = std::max(worst, std::abs(v - want));
      rep.k_table.push_back({e, z, v, decompose_circle(v, lattice, tol)});
    }
    s.require("lattice multiplicativity", worst <= tol, "max deviation " + detail::num(worst), ErrorCode::FTableInconsistent);

    auto phi = Automorphism::build(g, Kind::Standard, st.t, st.sigma, gf);
    rep.recovered = phi;
    detail::residual_check(
        s, phi,
        [&](Rng& r) -> AnyMatrix {
          CircleElem e{std::vector<Rational>(lattice.rank(), Rational(0))};
          for (auto& x : e.v) x = Rational(r.uniform_int(-1, 1));
          Complex w = std::pow(circle_value(lattice, e), 1.0 / static_cast<double>(n));
          return random_special_unitary(n, r) * w;
        },
        opts.residual_samples, tol, derive_seed(seed, 9));
  });
}

}  // namespace locaut
