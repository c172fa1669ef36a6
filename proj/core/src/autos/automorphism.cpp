#include "locaut/autos/automorphism.hpp"

#include <cmath>
#include <sstream>

#include "locaut/matrix/linalg.hpp"
#include "locaut/scalar/classes.hpp"

namespace locaut {

std::string_view kind_name(Kind k) { return k == Kind::Standard ? "std" : "contra"; }
std::string_view sigma_name(Sigma s) { return s == Sigma::Id ? "id" : "conj"; }

namespace {

template <class S>
Matrix<S> kind_map(const Matrix<S>& m, Kind k) {
  if (k == Kind::Standard) return m;
  return inverse(m).transpose();
}

AnyMatrix any_kind_map(const AnyMatrix& m, Kind k) {
  return std::visit([&](const auto& x) -> AnyMatrix { return kind_map(x, k); }, m);
}

bool is_real_power_sign_flip(const ContinuousPower& p) { return p.neg == NegSign::Flip; }

}  // namespace

Automorphism Automorphism::build(const GroupTag& group, Kind kind, AnyMatrix t, Sigma sigma, std::optional<MulFunc> g,
                                 double tol) {
  GroupTag gt = GroupTag::make(group.family, group.field, group.n);
  if (gt.family == Family::SLminus) throw Error(ErrorCode::BadParameters, "SLminus is not a group");
  if (dim_of(t) != gt.n || !std::visit([](const auto& x) { return x.is_square(); }, t))
    throw Error(ErrorCode::DimensionMismatch, "T must be n x n");
  if (gt.field == Field::R) {
    if (sigma != Sigma::Id) throw Error(ErrorCode::IllegalSigma, "conjugation is not a field endomorphism of R");
    if (regime_of(t) != Regime::QR) throw Error(ErrorCode::RegimeMismatch, "real groups need a QR matrix T");
  }
  if (gt.unitary() && kind == Kind::Contragredient)
    throw Error(ErrorCode::BadParameters, "unitary groups have no contragredient kind");

  // Invertibility and unitarity.
  bool singular = std::visit(
      [&](const auto& x) {
        using S = typename std::decay_t<decltype(x)>::Scalar;
        return ScalarTraits<S>::is_zero(det(x), ScalarTraits<S>::exact ? 0.0 : tol);
      },
      t);
  if (singular) throw Error(ErrorCode::SingularT, "T is singular");
  if (gt.unitary()) {
    bool unitary = std::visit(
        [&](const auto& x) {
          using S = typename std::decay_t<decltype(x)>::Scalar;
          if constexpr (ScalarTraits<S>::exact) {
            return x.adjoint() * x == Matrix<S>::identity(x.rows());
          } else {
            return unitarity_defect(x) <= tol;
          }
        },
        t);
    if (!unitary) throw Error(ErrorCode::NonUnitaryT, "T is not unitary");
  }

  // Scalar class.
  MulFunc gg = g.value_or(MulFunc::trivial(gt.family == Family::Un ? Ambient::Circle : Ambient::RStar));
  if (!gt.has_scalar_part()) {
    if (!gg.is_trivial()) throw Error(ErrorCode::IllegalScalarClass, gt.str() + " automorphisms carry no scalar part");
  } else if (gt.family == Family::Un) {
    if (gg.ambient() != Ambient::Circle) throw Error(ErrorCode::IllegalScalarClass, "U_n needs a circle character");
    auto v = check_Mu(gg, gt.n);
    if (!v.yes) throw Error(ErrorCode::IllegalScalarClass, v.certificate);
  } else {
    if (gg.ambient() != Ambient::RStar) throw Error(ErrorCode::IllegalScalarClass, "GL needs a character of R*");
    MulFunc checked = gg;
    if (gt.field == Field::C) {
      // g is evaluated at |det A| only; its behavior on negatives is irrelevant.
      if (auto* p = gg.as_power()) checked = MulFunc::power(p->c, NegSign::Same);
      if (auto* h = gg.as_real_hom(); h && h->lattice.with_sign)
        throw Error(ErrorCode::IllegalScalarClass, "GL(C) characters act on |det A|; drop the sign generator");
    }
    auto v = check_Mr(checked, gt.n, kind_sign(kind));
    if (!v.yes) throw Error(ErrorCode::IllegalScalarClass, v.certificate);
  }

  Automorphism a;
  a.group_ = gt;
  a.kind_ = kind;
  a.t_inv_ = any_inverse(t);
  a.t_ = std::move(t);
  a.sigma_ = sigma;
  a.g_ = std::move(gg);
  a.tol_ = tol;
  return a;
}

Automorphism Automorphism::identity(const GroupTag& group) {
  AnyMatrix t = group.field == Field::R ? AnyMatrix(MatQ::identity(group.n)) : AnyMatrix(MatG::identity(group.n));
  return build(group, Kind::Standard, std::move(t), Sigma::Id);
}

namespace {

template <class S>
S scalar_factor(const Automorphism& phi, const Matrix<S>& a_sigma, const Matrix<S>& a) {
  const auto& g = phi.g();
  const GroupTag& grp = phi.group();
  if (!grp.has_scalar_part() || g.is_trivial()) return ScalarTraits<S>::one();
  if constexpr (std::is_same_v<S, Complex>) {
    if (grp.family == Family::Un) return g.eval_circle(det(a_sigma), phi.tol());
    if (auto* p = g.as_power()) return Complex(std::pow(std::abs(det(a)), p->c.to_double()), 0.0);
    throw Error(ErrorCode::NotRepresentable, "lattice characters need an exact determinant");
  } else if constexpr (std::is_same_v<S, GaussRational>) {
    if (grp.family == Family::Un) return g.eval_circle_exact(det(a_sigma));
    SignedFactored modulus = factor(det(a).norm2()).pow(Rational(1) / Rational(2));
    return GaussRational(g.eval_real(modulus).to_rational());
  } else {
    return g.eval_real(factor(det(a))).to_rational();
  }
}

template <class S>
Matrix<S> core_impl(const Automorphism& phi, const Matrix<S>& a) {
  Matrix<S> core = kind_map(a.apply_sigma(phi.sigma()), phi.kind());
  const auto* t = std::get_if<Matrix<S>>(&phi.T());
  const auto* t_inv = std::get_if<Matrix<S>>(&phi.T_inverse());
  if (t && t_inv) return *t * core * *t_inv;
  return as_regime<S>(phi.T()) * core * as_regime<S>(phi.T_inverse());
}

template <class S>
Matrix<S> apply_impl(const Automorphism& phi, const Matrix<S>& a) {
  S s = scalar_factor(phi, a.apply_sigma(phi.sigma()), a);
  return core_impl(phi, a) * s;
}

AnyMatrix checked_core(const Automorphism& phi, const AnyMatrix& a, bool with_scalar, AnyScalar* det_out = nullptr) {
  auto m = member(a, phi.group(), phi.tol());
  if (det_out) *det_out = m.det;
  if (!m.member) throw Error(ErrorCode::NotInGroup, "input is not in " + phi.group().str() + " (" + m.witness + ")");
  Regime r = join(regime_of(a), regime_of(phi.T()));
  switch (r) {
    case Regime::QR: {
      auto x = as_regime<Rational>(a);
      return with_scalar ? apply_impl(phi, x) : core_impl(phi, x);
    }
    case Regime::QC: {
      auto x = as_regime<GaussRational>(a);
      return with_scalar ? apply_impl(phi, x) : core_impl(phi, x);
    }
    case Regime::C64: {
      auto x = as_regime<Complex>(a);
      return with_scalar ? apply_impl(phi, x) : core_impl(phi, x);
    }
  }
  return a;
}

}  // namespace

AnyMatrix Automorphism::apply(const AnyMatrix& a) const { return checked_core(*this, a, true); }

ScaledMatrix Automorphism::apply_scaled(const AnyMatrix& a) const {
  Regime r = join(regime_of(a), regime_of(t_));
  if (!group_.has_scalar_part() || group_.family == Family::Un || g_.is_trivial() || r == Regime::C64)
    return apply(a);
  AnyScalar d;
  AnyMatrix core = checked_core(*this, a, false, &d);
  SignedFactored point;
  if (auto* q = std::get_if<Rational>(&d)) point = factor(*q);
  else point = factor(std::get<GaussRational>(d).norm2()).pow(Rational(1, 2));
  return ScaledMatrix::make(g_.eval_real(point), std::move(core));
}

std::string Automorphism::describe() const {
  std::ostringstream os;
  os << group_.str() << " " << kind_name(kind_) << " sigma=" << sigma_name(sigma_) << " regime(T)="
     << regime_name(regime_of(t_));
  if (group_.has_scalar_part()) os << " g: " << g_.describe();
  return os.str();
}

MulFunc compose_scalar(const MulFunc& g_phi, int eps_phi, const MulFunc& g_psi, int eps_psi, std::size_t n) {
  if (g_phi.ambient() != g_psi.ambient()) throw Error(ErrorCode::LatticeIncompatible, "ambient groups differ");
  const Rational nq(static_cast<long>(n));
  if (g_phi.ambient() == Ambient::Circle) {
    auto* p1 = g_phi.as_power();
    auto* p2 = g_psi.as_power();
    if (p1 && p2) {
      Rational k = p1->c * (nq * p2->c + Rational(1)) + p2->c;
      return MulFunc::circle_power(k.num().get_si());
    }
    const CircleLattice& lat = p2 ? g_phi.as_circle_hom()->lattice : g_psi.as_circle_hom()->lattice;
    if (!p1 && !p2 && !(g_phi.as_circle_hom()->lattice == g_psi.as_circle_hom()->lattice))
      throw Error(ErrorCode::LatticeIncompatible, "circle characters live on different lattices");
    std::vector<CircleElem> images;
    for (std::size_t k = 0; k < lat.rank(); ++k) {
      CircleElem e;
      e.v.assign(lat.rank(), Rational(0));
      e.v[k] = Rational(1);
      CircleElem gpsi = g_psi.eval_circle_elem(e);
      CircleElem inner = circle_add(circle_scale(gpsi, nq), e);
      images.push_back(circle_add(g_phi.eval_circle_elem(inner), gpsi));
    }
    try {
      return MulFunc::circle_hom(circle_hom(lat, std::move(images)));
    } catch (const Error& err) {
      throw Error(ErrorCode::LatticeIncompatible, err.detail());
    }
  }

  auto* p1 = g_phi.as_power();
  auto* p2 = g_psi.as_power();
  if (p1 && p2) {
    Rational c = p1->c * (nq * p2->c + Rational(eps_psi)) + Rational(eps_phi) * p2->c;
    long a = is_real_power_sign_flip(*p2) ? 1 : 0;
    long b = is_real_power_sign_flip(*p1) ? 1 : 0;
    long bit = (b * (a * static_cast<long>(n) + 1) + a) % 2;
    return MulFunc::power(c, bit ? NegSign::Flip : NegSign::Same);
  }
  auto s_value = [&](const SignedFactored& d) -> SignedFactored {
    auto gpsi = g_psi.try_eval_real(d);
    if (!gpsi) throw Error(ErrorCode::LatticeIncompatible, d.str() + " is outside the inner lattice");
    SignedFactored inner = gpsi->pow(nq) * d.pow(Rational(eps_psi));
    auto outer = g_phi.try_eval_real(inner);
    if (!outer) throw Error(ErrorCode::LatticeIncompatible, inner.str() + " is outside the outer lattice");
    return *outer * gpsi->pow(Rational(eps_phi));
  };
  std::vector<SignedFactored> gens;
  bool with_sign = false;
  if (auto* h2 = g_psi.as_real_hom()) {
    gens = h2->lattice.generators;
    with_sign = h2->lattice.with_sign;
  } else {
    // Pull the outer lattice back through d -> |d|^e, e = n c + eps_psi.
    const auto& h1 = *g_phi.as_real_hom();
    Rational e = nq * p2->c + Rational(eps_psi);
    for (const auto& gamma : h1.lattice.generators) gens.push_back(gamma.pow(e.inverse()));
    with_sign = h1.lattice.with_sign;
  }
  std::vector<SignedFactored> images;
  for (const auto& gamma : gens) images.push_back(s_value(gamma));
  int sign_image = with_sign ? s_value(SignedFactored::minus_one()).sign() : 1;
  return MulFunc::real_hom(hom_on_lattice(RealLattice::make(gens, with_sign), std::move(images), sign_image));
}

MulFunc invert_scalar(const MulFunc& g, int eps, std::size_t n) {
  const Rational nq(static_cast<long>(n));
  if (g.ambient() == Ambient::Circle) {
    if (auto* p = g.as_power()) {
      Rational k = -p->c / (nq * p->c + Rational(1));
      if (!k.is_integer()) throw Error(ErrorCode::LatticeIncompatible, "inverse exponent is not an integer");
      return MulFunc::circle_power(k.num().get_si());
    }
    const auto& h = *g.as_circle_hom();
    const std::size_t r = h.lattice.rank();
    MatQ gm(r, r), f(r, r);
    auto cols = h.matrix();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        gm(i, j) = cols[i][j];
        f(i, j) = nq * cols[i][j] + Rational(i == j ? 1 : 0);
      }
    MatQ ginv = -(gm * inverse(f));
    std::vector<CircleElem> images(r);
    for (std::size_t j = 0; j < r; ++j) images[j].v = ginv.column_vector(j);
    try {
      return MulFunc::circle_hom(circle_hom(h.lattice, std::move(images)));
    } catch (const Error& err) {
      throw Error(ErrorCode::LatticeIncompatible, err.detail());
    }
  }
  if (auto* p = g.as_power()) {
    Rational c = -Rational(eps) * p->c / (nq * p->c + Rational(eps));
    return MulFunc::power(c, p->neg);
  }
  const auto& h = *g.as_real_hom();
  std::vector<SignedFactored> gens, images;
  for (std::size_t k = 0; k < h.images.size(); ++k) {
    gens.push_back(h.images[k].pow(nq) * h.lattice.generators[k].pow(Rational(eps)));
    images.push_back(h.images[k].pow(Rational(-eps)));
  }
  return MulFunc::real_hom(hom_on_lattice(RealLattice::make(gens, h.lattice.with_sign), std::move(images),
                                          h.sign_image));
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  if (!(phi.group() == psi.group())) throw Error(ErrorCode::GroupMismatch, "automorphisms of different groups");
  Kind kind = phi.kind() == psi.kind() ? Kind::Standard : Kind::Contragredient;
  Sigma sigma = phi.sigma() == psi.sigma() ? Sigma::Id : Sigma::Conj;
  AnyMatrix t = any_mul(phi.T(), any_kind_map(any_sigma(psi.T(), phi.sigma()), phi.kind()));
  std::optional<MulFunc> g;
  if (phi.group().has_scalar_part()) {
    g = compose_scalar(phi.g(), kind_sign(phi.kind()), psi.g(), kind_sign(psi.kind()), phi.group().n);
  }
  // A unitary T may drift numerically; keep the components' tolerance.
  return Automorphism::build(phi.group(), kind, std::move(t), sigma, g, std::max(phi.tol(), psi.tol()));
}

Automorphism invert(const Automorphism& phi) {
  AnyMatrix ts = any_sigma(phi.T(), phi.sigma());
  AnyMatrix t = phi.kind() == Kind::Standard
                    ? any_inverse(ts)
                    : std::visit([](const auto& x) -> AnyMatrix { return x.transpose(); }, ts);
  std::optional<MulFunc> g;
  if (phi.group().has_scalar_part()) g = invert_scalar(phi.g(), kind_sign(phi.kind()), phi.group().n);
  return Automorphism::build(phi.group(), phi.kind(), std::move(t), phi.sigma(), g, phi.tol());
}

}  // namespace locaut
