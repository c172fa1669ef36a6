#include "locaut/scalar/mulfunc.hpp"

#include <cmath>
#include <sstream>

#include "locaut/error.hpp"

namespace locaut {

std::string_view ambient_name(Ambient a) { return a == Ambient::RStar ? "Rstar" : "Circle"; }

MulFunc::MulFunc(Ambient ambient, Repr repr) : ambient_(ambient), repr_(std::move(repr)) {
  if (ambient_ == Ambient::RStar && std::holds_alternative<CircleLatticeHom>(repr_))
    throw Error(ErrorCode::BadParameters, "circle lattice hom on R*");
  if (ambient_ == Ambient::Circle) {
    if (std::holds_alternative<RealLatticeHom>(repr_)) throw Error(ErrorCode::BadParameters, "real lattice hom on circle");
    if (auto* p = as_power(); p && !p->c.is_integer())
      throw Error(ErrorCode::BadParameters, "circle power must have an integer exponent");
  }
}

bool MulFunc::is_trivial() const {
  if (auto* p = as_power()) return p->c.is_zero() && (ambient_ == Ambient::Circle || p->neg == NegSign::Same);
  if (auto* h = as_real_hom()) {
    for (const auto& im : h->images)
      if (!im.is_one()) return false;
    return h->sign_image == 1;
  }
  const auto& h = std::get<CircleLatticeHom>(repr_);
  CircleElem zero;
  zero.v.assign(h.lattice.rank(), Rational(0));
  for (const auto& im : h.images)
    if (!circle_equal(h.lattice, im, zero)) return false;
  return true;
}

std::optional<SignedFactored> MulFunc::try_eval_real(const SignedFactored& x) const {
  if (ambient_ != Ambient::RStar) throw Error(ErrorCode::AmbientMismatch, "eval_real on a circle function");
  if (auto* p = as_power()) {
    SignedFactored v = x.abs().pow(p->c);
    if (!x.is_positive() && p->neg == NegSign::Flip) v = v * SignedFactored::minus_one();
    return v;
  }
  return as_real_hom()->try_eval(x);
}

SignedFactored MulFunc::eval_real(const SignedFactored& x) const {
  auto v = try_eval_real(x);
  if (!v) throw Error(ErrorCode::DetOutsideLattice, x.str() + " is not in the lattice of g");
  return *v;
}

Complex MulFunc::eval_circle(Complex z, double tol) const {
  if (ambient_ != Ambient::Circle) throw Error(ErrorCode::AmbientMismatch, "eval_circle on an R* function");
  if (auto* p = as_power()) return std::pow(z, static_cast<int>(p->c.num().get_si()));
  const auto& h = std::get<CircleLatticeHom>(repr_);
  auto e = decompose_circle(z, h.lattice, tol);
  if (!e) throw Error(ErrorCode::DetOutsideLattice, "value not found in the circle lattice");
  return circle_value(h.lattice, h.eval(*e));
}

GaussRational MulFunc::eval_circle_exact(const GaussRational& z) const {
  if (ambient_ != Ambient::Circle) throw Error(ErrorCode::AmbientMismatch, "eval_circle on an R* function");
  if (auto* p = as_power()) return pow(z, p->c.num().get_si());
  if (is_trivial()) return GaussRational(1);
  throw Error(ErrorCode::NotRepresentable, "lattice circle function has no exact value on Q(i)");
}

CircleElem MulFunc::eval_circle_elem(const CircleElem& e) const {
  if (ambient_ != Ambient::Circle) throw Error(ErrorCode::AmbientMismatch, "eval_circle_elem on an R* function");
  if (auto* p = as_power()) return circle_scale(e, p->c);
  return std::get<CircleLatticeHom>(repr_).eval(e);
}

std::string MulFunc::describe() const {
  std::ostringstream os;
  if (auto* p = as_power()) {
    if (ambient_ == Ambient::Circle) {
      os << "z^" << p->c.str();
    } else {
      os << "|x|^" << p->c.str() << (p->neg == NegSign::Flip ? " with g(-x) = -g(x)" : "");
    }
    return os.str();
  }
  if (auto* h = as_real_hom()) {
    os << "lattice hom:";
    for (std::size_t k = 0; k < h->images.size(); ++k)
      os << " " << h->lattice.generators[k].str() << "->" << h->images[k].str();
    if (h->lattice.with_sign) os << " -1->" << h->sign_image;
    return os.str();
  }
  const auto& h = std::get<CircleLatticeHom>(repr_);
  os << "circle lattice hom:";
  for (std::size_t k = 0; k < h.images.size(); ++k) {
    os << " " << h.lattice.generators[k].label << "->[";
    for (std::size_t i = 0; i < h.images[k].v.size(); ++i) os << (i ? "," : "") << h.images[k].v[i].str();
    os << "]";
  }
  return os.str();
}

bool operator==(const MulFunc& a, const MulFunc& b) {
  if (a.ambient_ != b.ambient_ || a.repr_.index() != b.repr_.index()) return false;
  if (auto* p = a.as_power()) return *p == *b.as_power();
  if (auto* h = a.as_real_hom()) return *h == *b.as_real_hom();
  const auto& x = std::get<CircleLatticeHom>(a.repr_);
  const auto& y = std::get<CircleLatticeHom>(b.repr_);
  if (!(x.lattice == y.lattice)) return false;
  for (std::size_t k = 0; k < x.images.size(); ++k)
    if (!circle_equal(x.lattice, x.images[k], y.images[k])) return false;
  return true;
}

ScalarTable tabulate(const MulFunc& f, const std::vector<Rational>& domain, std::vector<Rational>* skipped) {
  ScalarTable t;
  for (const auto& d : domain) {
    SignedFactored x = factor(d);
    auto v = f.try_eval_real(x);
    if (v) {
      t.push_back({x, *v});
    } else if (skipped) {
      skipped->push_back(d);
    }
  }
  return t;
}

}  // namespace locaut
