#include "locaut/matrix/scaled.hpp"

#include "locaut/error.hpp"
#include "locaut/matrix/linalg.hpp"

namespace locaut {

ScaledMatrix ScaledMatrix::make(const SignedFactored& s, AnyMatrix mat) {
  ScaledMatrix out;
  if (s.is_rational()) {
    out.m = any_scale(mat, s.to_rational());
  } else if (regime_of(mat) == Regime::C64) {
    out.m = std::get<MatC>(mat) * Complex(s.to_double(), 0.0);
  } else {
    out.scale = s;
    out.m = std::move(mat);
  }
  return out;
}

const AnyMatrix& ScaledMatrix::value() const {
  if (!is_plain()) throw Error(ErrorCode::NotRepresentable, "scale " + scale.str() + " is irrational");
  return m;
}

MatC ScaledMatrix::numeric() const { return as_regime<Complex>(m) * Complex(scale.to_double(), 0.0); }

bool scaled_equal(const ScaledMatrix& a, const ScaledMatrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  if (a.is_plain() && b.is_plain()) return approx_equal(a.m, b.m, tol);
  if (regime_of(a.m) == Regime::C64 || regime_of(b.m) == Regime::C64)
    return max_abs_diff(a.numeric(), b.numeric()) <= tol;
  SignedFactored ratio = a.scale / b.scale;
  if (!ratio.is_rational()) return false;  // invertible values only: a nonzero multiple would be irrational
  return approx_equal(any_scale(a.m, ratio.to_rational()), b.m, tol);
}

std::optional<SignedFactored> real_det(const ScaledMatrix& a) {
  AnyScalar d = det_any(a.m);
  Rational r;
  if (auto* q = std::get_if<Rational>(&d)) {
    r = *q;
  } else if (auto* g = std::get_if<GaussRational>(&d); g && g->im().is_zero()) {
    r = g->re();
  } else {
    return std::nullopt;
  }
  if (r.is_zero()) return std::nullopt;
  return factor(r) * a.scale.pow(Rational(static_cast<long>(a.dim())));
}

Membership member(const ScaledMatrix& a, const GroupTag& g, double tol) {
  if (a.is_plain()) return member(a.m, g, tol);
  Membership out;
  if (a.dim() != g.n) {
    out.witness = "dimension mismatch";
    return out;
  }
  if (g.unitary()) {
    out.witness = "irrational real scale " + a.scale.str() + " cannot be unitary";
    return out;
  }
  if (g.field == Field::R && !any_is_real(a.m)) {
    out.witness = "real group needs real entries";
    return out;
  }
  AnyScalar d = det_any(a.m);
  bool zero = std::visit([](const auto& x) { return ScalarTraits<std::decay_t<decltype(x)>>::is_zero(x, 0.0); }, d);
  if (zero) {
    out.witness = "singular";
    return out;
  }
  if (g.family == Family::GL) {
    out.member = true;
    return out;
  }
  auto rd = real_det(a);
  out.member = rd && ((g.family == Family::SL && rd->is_one()) || (g.family == Family::SLminus && (*rd == SignedFactored::minus_one())));
  out.witness = rd ? "det = " + rd->str() : "det is not real";
  return out;
}

}  // namespace locaut
