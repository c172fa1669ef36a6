#include "session.hpp"

#include <cmath>
#include <sstream>

namespace locaut {

const RecoveryCheck* RecoveryReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string RecoveryReport::summary() const {
  std::ostringstream os;
  os << method << " on " << group.str() << ": ";
  if (failure) {
    os << "failed with " << error_code_name(failure->code) << " (" << failure->detail << ")";
  } else {
    os << "recovered " << (recovered ? recovered->describe() : std::string("nothing"));
  }
  os << "; residual " << (residual_pass ? "pass" : "fail") << " on " << residual_samples << " samples";
  os << "; " << queries_used << "/" << budget << " queries";
  if (local_not_global) os << "; local-not-global";
  return os.str();
}

AnyMatrix normalize_T(const AnyMatrix& t, double tol) {
  return std::visit(
      [&](const auto& m) -> AnyMatrix {
        using S = typename std::decay_t<decltype(m)>::Scalar;
        if constexpr (ScalarTraits<S>::exact) {
          for (const auto& x : m.data())
            if (!x.is_zero()) return m * x.inverse();
          throw Error(ErrorCode::SingularT, "zero matrix");
        } else {
          double fro = 0.0;
          for (const auto& x : m.data()) fro += std::norm(x);
          fro = std::sqrt(fro);
          if (fro == 0.0) throw Error(ErrorCode::SingularT, "zero matrix");
          MatC out = m * Complex(std::sqrt(static_cast<double>(m.rows())) / fro, 0.0);
          for (const auto& x : out.data())
            if (std::abs(x) > tol) return out * (std::conj(x) / std::abs(x));
          return out;
        }
      },
      t);
}

bool proportional(const AnyMatrix& a, const AnyMatrix& b, double tol) {
  if (dim_of(a) != dim_of(b)) return false;
  Regime r = join(regime_of(a), regime_of(b));
  if (r == Regime::C64) {
    MatC x = as_regime<Complex>(a), y = as_regime<Complex>(b);
    Complex num = 0.0, den = 0.0;
    double na = 0.0;
    for (std::size_t k = 0; k < x.data().size(); ++k) {
      num += std::conj(y.data()[k]) * x.data()[k];
      den += std::norm(y.data()[k]);
      na = std::max(na, std::abs(x.data()[k]));
    }
    if (den == 0.0) return false;
    Complex c = num / den;
    if (std::abs(c) <= tol) return false;
    return max_abs_diff(x, y * c) <= tol * std::max(1.0, na);
  }
  MatG x = as_regime<GaussRational>(a), y = as_regime<GaussRational>(b);
  for (std::size_t k = 0; k < y.data().size(); ++k) {
    if (y.data()[k].is_zero()) continue;
    GaussRational c = x.data()[k] / y.data()[k];
    return !c.is_zero() && x == y * c;
  }
  return false;
}

namespace detail {

ScaledMatrix Session::ask(const AnyMatrix& a, const GroupTag& expect) {
  if (report_.queries_used >= report_.budget)
    throw Error(ErrorCode::BudgetExceeded, "query budget of " + std::to_string(report_.budget) + " exhausted");
  ++report_.queries_used;
  ScaledMatrix out = oracle_.query(a);
  if (out.dim() != dim_of(a))
    throw Error(ErrorCode::OracleFailure, "image of query " + std::to_string(report_.queries_used) + " has the wrong size");
  if (regime_of(out.m) == Regime::QC && expect.field == Field::R) out.m = narrow_real(out.m);
  auto mem = member(out, expect, opts_.tol);
  if (!mem.member)
    throw Error(ErrorCode::NotInGroup,
                "image of query " + std::to_string(report_.queries_used) + " is not in " + expect.str() + " (" +
                    mem.witness + ")");
  return out;
}

void Session::require(std::string name, bool ok, std::string detail, ErrorCode code) {
  report_.checks.push_back({name, ok, detail});
  if (!ok) throw Error(code, name + ": " + detail);
}

template <class S>
Matrix<S> exact_image(const ScaledMatrix& m) {
  const AnyMatrix& v = m.value();
  if (regime_of(v) == Regime::C64) throw Error(ErrorCode::NotRepresentable, "oracle returned a floating-point image");
  if constexpr (std::is_same_v<S, Rational>) {
    AnyMatrix q = narrow_real(v);
    if (regime_of(q) != Regime::QR) throw Error(ErrorCode::NotRepresentable, "oracle returned a non-real image");
    return std::get<MatQ>(q);
  } else {
    return as_regime<S>(v);
  }
}

template MatQ exact_image<Rational>(const ScaledMatrix&);
template MatG exact_image<GaussRational>(const ScaledMatrix&);

void residual_check(Session& s, const Automorphism& phi, const std::function<AnyMatrix(Rng&)>& gen, std::size_t count,
                    double tol, std::uint64_t seed) {
  auto& rep = s.report();
  Rng rng(seed);
  rep.residual_samples = 0;
  rep.residual_failures = 0;
  std::string first;
  for (std::size_t k = 0; k < count; ++k) {
    AnyMatrix a = gen(rng);
    ScaledMatrix got = s.ask(a, phi.group());
    ScaledMatrix want = phi.apply_scaled(a);
    ++rep.residual_samples;
    if (!scaled_equal(got, want, tol)) {
      if (rep.residual_failures++ == 0) first = "sample " + std::to_string(k);
    }
  }
  rep.residual_pass = rep.residual_failures == 0;
  if (!rep.residual_pass)
    throw Error(ErrorCode::ResidualFail, std::to_string(rep.residual_failures) + " of " +
                                             std::to_string(rep.residual_samples) +
                                             " fresh samples disagree with the recovered automorphism, first at " + first);
}

RecoveryReport run_engine(const char* method, Oracle& o, const RecoverOptions& opts,
                          const std::function<void(Session&)>& body) {
  if (opts.residual_samples < 50) throw Error(ErrorCode::BadParameters, "the residual check needs at least 50 samples");
  RecoveryReport rep;
  rep.method = method;
  rep.group = o.group();
  rep.budget = opts.budget == 0 ? default_budget(o.group().n) : opts.budget;
  Session s(o, rep, opts);
  try {
    body(s);
  } catch (const Error& e) {
    rep.failure = RecoveryFailure{e.code(), e.detail()};
  }
  return rep;
}

}  // namespace detail
}  // namespace locaut
