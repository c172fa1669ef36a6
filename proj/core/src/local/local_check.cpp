#include "locaut/local/local_check.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "locaut/error.hpp"
#include "locaut/matrix/linalg.hpp"
#include "locaut/matrix/polynomial.hpp"
#include "locaut/random.hpp"
#include "locaut/scalar/classes.hpp"

namespace locaut {

std::string_view pair_status_name(PairStatus s) {
  switch (s) {
    case PairStatus::Interpolable: return "Interpolable";
    case PairStatus::NotInterpolable: return "NotInterpolable";
    case PairStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view map_status_name(MapStatus s) {
  switch (s) {
    case MapStatus::LocalAutomorphismEvidence: return "LocalAutomorphismEvidence";
    case MapStatus::Refuted: return "Refuted";
    case MapStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

struct Branch {
  Kind kind;
  Sigma sigma;
};

std::string branch_name(const Branch& b) {
  return std::string(kind_name(b.kind)) + "/" + std::string(sigma_name(b.sigma));
}

std::vector<Branch> legal_branches(const GroupTag& g, bool all_real) {
  std::vector<Branch> out;
  std::vector<Kind> kinds = {Kind::Standard};
  if (!g.unitary()) kinds.push_back(Kind::Contragredient);
  for (Kind k : kinds) {
    out.push_back({k, Sigma::Id});
    // On real data conj acts as id, so its branch repeats the id branch.
    if (g.field == Field::C && !all_real) out.push_back({k, Sigma::Conj});
  }
  return out;
}

struct Outcome {
  std::vector<std::string> failures;  // definitive
  std::vector<std::string> open;      // undecided
  std::optional<Automorphism> witness;
  std::string how;
};

template <class S>
Matrix<S> kind_core(const Matrix<S>& a, const Branch& b) {
  Matrix<S> x = a.apply_sigma(b.sigma);
  if (b.kind == Kind::Standard) return x;
  return inverse(x).transpose();
}

// Real n-th roots of r.
std::vector<SignedFactored> real_roots(const SignedFactored& r, std::size_t n, bool positive_only) {
  SignedFactored m = r.abs().pow(Rational(1) / Rational(static_cast<long>(n)));
  if (r.is_positive()) {
    if (n % 2 == 0 && !positive_only) return {m, SignedFactored::minus_one() * m};
    return {m};
  }
  if (n % 2 == 1 && !positive_only) return {SignedFactored::minus_one() * m};
  return {};
}

template <class S>
std::optional<Rational> real_part_if_real(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return x;
  } else {
    if (!x.im().is_zero()) return std::nullopt;
    return x.re();
  }
}

// The character argument: det A on GL(R), |det A| on GL(C).
template <class S>
SignedFactored char_point(const GroupTag& g, const Matrix<S>& a) {
  S d = det(a);
  if (g.field == Field::R) return factor(*real_part_if_real(d));
  if constexpr (std::is_same_v<S, Rational>) return factor(d).abs();
  else return factor(d.norm2()).pow(Rational(1, 2));
}

// The n-th-power equation for the scalar: g(d)^n = det(A') / det(K(A)).
template <class S>
std::vector<SignedFactored> scalar_candidates(const GroupTag& g, const Matrix<S>& k, const Matrix<S>& m,
                                              const SignedFactored& s, std::string& why) {
  if (!g.has_scalar_part()) return {SignedFactored()};
  auto q = real_part_if_real<S>(det(m) / det(k));
  if (!q) {
    why = "det A' / det K(A) is not real";
    return {};
  }
  SignedFactored r = factor(*q) * s.pow(Rational(static_cast<long>(g.n)));
  auto roots = real_roots(r, g.n, g.field == Field::C);
  if (roots.empty()) why = "g(d)^" + std::to_string(g.n) + " = " + r.str() + " has no admissible real root";
  return roots;
}

template <class S>
bool charpoly_consistent(const Matrix<S>& k, const Matrix<S>& m, const SignedFactored& t) {
  auto pk = charpoly(k), pm = charpoly(m);
  const std::size_t n = k.rows();
  for (std::size_t j = 0; j < n; ++j) {
    // det(x - t M) = sum_j a_j(M) t^(n-j) x^j.
    bool zm = ScalarTraits<S>::is_zero(pm[j], 0.0), zk = ScalarTraits<S>::is_zero(pk[j], 0.0);
    if (zm || zk) {
      if (zm != zk) return false;
      continue;
    }
    SignedFactored u = t.pow(Rational(static_cast<long>(n - j)));
    if (!u.is_rational()) return false;
    if (!(pk[j] == pm[j] * S(u.to_rational()))) return false;
  }
  return true;
}

bool verify(const Automorphism& w, const AnyMatrix& a, const ScaledMatrix& ap, double tol, std::string& why) {
  try {
    if (scaled_equal(w.apply_scaled(a), ap, tol)) return true;
    why = "witness does not reproduce the sample";
  } catch (const Error& e) {
    why = std::string("witness could not be evaluated: ") + e.what();
  }
  return false;
}

struct Side {
  AnyMatrix in;
  ScaledMatrix out;
};

template <class S>
void exact_branch(const GroupTag& g, const Branch& br, const Side& a, const Side& b, std::uint64_t seed,
                  const LocalCheckOptions& opts, Outcome& out) {
  const std::string bn = branch_name(br);
  const int eps = kind_sign(br.kind);
  Matrix<S> A = as_regime<S>(a.in), B = as_regime<S>(b.in);
  Matrix<S> MA = as_regime<S>(a.out.m), MB = as_regime<S>(b.out.m);
  Matrix<S> KA = kind_core(A, br), KB = kind_core(B, br);

  std::string why_a, why_b;
  auto cand_a = scalar_candidates(g, KA, MA, a.out.scale, why_a);
  auto cand_b = scalar_candidates(g, KB, MB, b.out.scale, why_b);
  if (cand_a.empty() || cand_b.empty()) {
    out.failures.push_back(bn + ": " + (cand_a.empty() ? why_a : why_b));
    return;
  }
  SignedFactored da, db;
  if (g.has_scalar_part()) {
    da = char_point(g, A);
    db = char_point(g, B);
  }
  std::uint64_t c = 0;
  for (const auto& ga : cand_a) {
    for (const auto& gb : cand_b) {
      ++c;
      std::string tag = bn + (g.has_scalar_part() ? " g=(" + ga.str() + ", " + gb.str() + ")" : "");
      std::optional<MulFunc> character;
      if (g.has_scalar_part()) {
        if (da == db && !(ga == gb)) {
          out.failures.push_back(tag + ": equal character arguments need equal values");
          continue;
        }
        ScalarTable table = {{da, ga}};
        if (!(da == db)) table.push_back({db, gb});
        auto ext = interpolating_character(table, g.n, eps);
        if (!ext.witness) {
          out.failures.push_back(tag + ": " + ext.reason);
          continue;
        }
        if (table.size() == 2 && !check_LMr_on_domain(table, g.n, eps).all_ok) {
          out.open.push_back(tag + ": class routes disagree");
          continue;
        }
        character = MulFunc::real_hom(*ext.witness);
      }
      // Remove the scalar: A' / g(d) = t * M with t = s / g(d).
      SignedFactored ta = a.out.scale / ga, tb = b.out.scale / gb;
      if (!ta.is_rational() || !tb.is_rational()) {
        bool ok_a = ta.is_rational() ? charpoly(KA) == charpoly(MA * S(ta.to_rational())) : charpoly_consistent(KA, MA, ta);
        bool ok_b = tb.is_rational() ? charpoly(KB) == charpoly(MB * S(tb.to_rational())) : charpoly_consistent(KB, MB, tb);
        if (ok_a && ok_b) out.open.push_back(tag + ": irrational residual scale with matching characteristic polynomials");
        else out.failures.push_back(tag + ": characteristic polynomials differ after removing the scalar");
        continue;
      }
      Matrix<S> RA = MA * S(ta.to_rational()), RB = MB * S(tb.to_rational());
      if (charpoly(KA) != charpoly(RA) || charpoly(KB) != charpoly(RB)) {
        out.failures.push_back(tag + ": characteristic polynomials differ");
        continue;
      }
      auto sim = simultaneous_similarity<S>({{KA, RA}, {KB, RB}}, derive_seed(seed, c), opts.similarity);
      if (sim.status == SimStatus::NoSolution) {
        out.failures.push_back(tag + ": no invertible intertwiner (" + sim.note + ")");
        continue;
      }
      if (sim.status == SimStatus::Inconclusive) {
        out.open.push_back(tag + ": " + sim.note);
        continue;
      }
      AnyMatrix t = sim.s;
      if (g.unitary()) t = polar_unitary(convert_matrix<Complex>(sim.s));
      std::string why;
      try {
        auto w = Automorphism::build(g, br.kind, t, br.sigma, character, opts.tol);
        if (verify(w, a.in, a.out, opts.tol, why) && verify(w, b.in, b.out, opts.tol, why)) {
          out.witness = std::move(w);
          out.how = tag;
          return;
        }
      } catch (const Error& e) {
        why = e.what();
      }
      out.open.push_back(tag + ": " + why);
    }
  }
}

// Unitary groups and floating-point samples.
void numeric_branch(const GroupTag& g, const Branch& br, const Side& a, const Side& b, std::uint64_t seed,
                    const LocalCheckOptions& opts, Outcome& out) {
  const std::string bn = branch_name(br);
  if (g.field == Field::R) {
    out.open.push_back(bn + ": floating-point samples of a real group are not decided");
    return;
  }
  if (g.family == Family::GL) {
    out.open.push_back(bn + ": the GL scalar class needs exact determinants");
    return;
  }
  const double tol = opts.tol;
  MatC A = as_regime<Complex>(a.in), B = as_regime<Complex>(b.in);
  MatC Ap = a.out.numeric(), Bp = b.out.numeric();
  MatC KA = kind_core(A, br), KB = kind_core(B, br);
  // Candidate values of g at d = det(A_sigma): the n-th roots of det A' / d.
  auto circle_candidates = [&](const MatC& k, const MatC& ap) {
    std::vector<Complex> out_c;
    Complex d = det(k);
    if (!g.has_scalar_part() || std::abs(d - 1.0) <= tol) return std::vector<Complex>{Complex(1.0, 0.0)};
    Complex r = det(ap) / d;
    double base = std::arg(r) / static_cast<double>(g.n);
    for (std::size_t k2 = 0; k2 < g.n; ++k2)
      out_c.push_back(std::polar(1.0, base + 2.0 * M_PI * static_cast<double>(k2) / static_cast<double>(g.n)));
    // Put the trivial value first when it is a root.
    std::stable_partition(out_c.begin(), out_c.end(), [&](Complex z) { return std::abs(z - 1.0) <= 1e-7; });
    return out_c;
  };
  Complex da = det(KA), db = det(KB);
  auto cand_a = circle_candidates(KA, Ap), cand_b = circle_candidates(KB, Bp);
  SimilarityOptions so = opts.similarity;
  so.unitary = g.unitary();
  std::uint64_t c = 0;
  bool any_nontrivial_found = false;
  for (Complex ga : cand_a) {
    for (Complex gb : cand_b) {
      ++c;
      if (std::abs(da - db) <= tol && std::abs(ga - gb) > 1e-7) continue;
      bool trivial = std::abs(ga - 1.0) <= 1e-7 && std::abs(gb - 1.0) <= 1e-7;
      auto sim = simultaneous_similarity({{KA, Ap * (1.0 / ga)}, {KB, Bp * (1.0 / gb)}}, derive_seed(seed, c), so);
      if (sim.status != SimStatus::Found) {
        if (sim.status == SimStatus::Inconclusive) out.open.push_back(bn + ": " + sim.note);
        continue;
      }
      if (!trivial) {
        any_nontrivial_found = true;
        continue;
      }
      std::string why;
      try {
        auto w = Automorphism::build(g, br.kind, sim.s, br.sigma, std::nullopt, std::max(tol, 1e-8));
        if (verify(w, a.in, a.out, std::max(tol, 1e-8), why) && verify(w, b.in, b.out, std::max(tol, 1e-8), why)) {
          out.witness = std::move(w);
          out.how = bn + (g.has_scalar_part() ? " g=1" : "");
          return;
        }
      } catch (const Error& e) {
        why = e.what();
      }
      out.open.push_back(bn + ": " + why);
    }
  }
  if (any_nontrivial_found) {
    out.open.push_back(bn + ": similar after removing nontrivial circle values; membership of such a g in M_u is not decided "
                            "without a declared lattice");
  } else {
    out.failures.push_back(bn + ": no unitary intertwiner for any scalar candidate (numeric, tol " +
                           std::to_string(opts.similarity.tol) + ")");
  }
}

// Real-valued QC matrices become QR, so real groups stay in the rational regime.
std::string join_reasons(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

void require_member(const AnyMatrix& m, const GroupTag& g, double tol, const char* what) {
  auto r = member(m, g, tol);
  if (!r.member) throw Error(ErrorCode::NotInGroup, std::string(what) + " is not in " + g.str() + " (" + r.witness + ")");
}

void require_member(const ScaledMatrix& m, const GroupTag& g, double tol, const char* what) {
  auto r = member(m, g, tol);
  if (!r.member) throw Error(ErrorCode::NotInGroup, std::string(what) + " is not in " + g.str() + " (" + r.witness + ")");
}

PairVerdict check_pair_unchecked(const GroupTag& g, const SamplePair& pa, const SamplePair& pb, std::uint64_t seed,
                                 const LocalCheckOptions& opts) {
  Side a{pa.in, pa.out}, b{pb.in, pb.out};
  if (g.field == Field::R) {
    a.in = narrow_real(a.in);
    b.in = narrow_real(b.in);
    a.out.m = narrow_real(a.out.m);
    b.out.m = narrow_real(b.out.m);
  }
  Regime r = join(join(regime_of(a.in), regime_of(b.in)), join(regime_of(a.out.m), regime_of(b.out.m)));
  bool all_real = any_is_real(a.in) && any_is_real(b.in) && any_is_real(a.out.m) && any_is_real(b.out.m);
  Outcome out;
  const bool numeric = r == Regime::C64 || g.family == Family::Un;
  auto branches = legal_branches(g, all_real);
  for (std::size_t bi = 0; bi < branches.size() && !out.witness; ++bi) {
    std::uint64_t s = derive_seed(seed, bi);
    if (numeric) numeric_branch(g, branches[bi], a, b, s, opts, out);
    else if (r == Regime::QR) exact_branch<Rational>(g, branches[bi], a, b, s, opts, out);
    else exact_branch<GaussRational>(g, branches[bi], a, b, s, opts, out);
  }
  PairVerdict v;
  if (out.witness) {
    v.status = PairStatus::Interpolable;
    v.witness = std::move(out.witness);
    v.reason = "witness " + out.how + " reproduces both samples";
  } else if (!out.open.empty()) {
    v.status = PairStatus::Inconclusive;
    v.reason = join_reasons(out.open);
    if (!out.failures.empty()) v.reason += " | excluded: " + join_reasons(out.failures);
  } else {
    v.status = PairStatus::NotInterpolable;
    v.reason = join_reasons(out.failures);
  }
  return v;
}

}  // namespace

PairVerdict check_pair(const GroupTag& group, const SamplePair& a, const SamplePair& b, std::uint64_t seed,
                       const LocalCheckOptions& opts) {
  require_member(a.in, group, opts.tol, "A");
  require_member(b.in, group, opts.tol, "B");
  require_member(a.out, group, opts.tol, "A'");
  require_member(b.out, group, opts.tol, "B'");
  if (approx_equal(a.in, b.in, opts.tol)) throw Error(ErrorCode::BadParameters, "the two inputs coincide");
  return check_pair_unchecked(group, a, b, seed, opts);
}

MapReport check_map(const SampleMap& m, std::uint64_t seed, const LocalCheckOptions& opts) {
  const std::size_t k = m.pairs.size();
  if (k < 2) throw Error(ErrorCode::TooFewSamples, "need at least two samples, got " + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i) {
    require_member(m.pairs[i].in, m.group, opts.tol, ("input " + std::to_string(i)).c_str());
    require_member(m.pairs[i].out, m.group, opts.tol, ("output " + std::to_string(i)).c_str());
    for (std::size_t j = 0; j < i; ++j)
      if (approx_equal(m.pairs[i].in, m.pairs[j].in, opts.tol))
        throw Error(ErrorCode::BadParameters, "inputs " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) idx.emplace_back(i, j);

  MapReport rep;
  rep.pairs.resize(idx.size());
  std::vector<std::exception_ptr> errors(idx.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next++) < idx.size();) {
      auto [i, j] = idx[t];
      try {
        rep.pairs[t] = check_pair_unchecked(m.group, m.pairs[i], m.pairs[j], derive_seed(seed, i, j), opts);
      } catch (...) {
        errors[t] = std::current_exception();
      }
      rep.pairs[t].i = i;
      rep.pairs[t].j = j;
    }
  };
  unsigned nt = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(idx.size())));
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t ok = 0, open = 0;
  for (const auto& p : rep.pairs) {
    if (p.status == PairStatus::Interpolable) ++ok;
    else if (p.status == PairStatus::Inconclusive) ++open;
    else if (!rep.refuting_pair) rep.refuting_pair = std::make_pair(p.i, p.j);
  }
  std::ostringstream os;
  if (rep.refuting_pair) {
    rep.status = MapStatus::Refuted;
    os << "pair (" << rep.refuting_pair->first << ", " << rep.refuting_pair->second
       << ") admits no interpolating automorphism";
  } else if (open > 0) {
    rep.status = MapStatus::Inconclusive;
    os << open << " of " << rep.pairs.size() << " pairs undecided";
  } else {
    rep.status = MapStatus::LocalAutomorphismEvidence;
    os << "all " << rep.pairs.size() << " pairs interpolated on " << k
       << " samples; evidence on this sample set, not a proof on the whole group";
  }
  rep.summary = os.str();
  return rep;
}

}  // namespace locaut
