/// @file mulfunc.hpp
/// Multiplicative functions on R* or the unit circle.
#pragma once

#include <optional>
#include <string>
#include <variant>

#include "locaut/exact/lattice.hpp"

namespace locaut {

enum class NegSign { Same, Flip };

/// g(x) = |x|^c on positives, g(-x) = +-g(x). On the circle c must be an
/// integer k and g(z) = z^k (neg is ignored).
struct ContinuousPower {
  Rational c;
  NegSign neg = NegSign::Same;
  friend bool operator==(const ContinuousPower&, const ContinuousPower&) = default;
};

class MulFunc {
 public:
  using Repr = std::variant<ContinuousPower, RealLatticeHom, CircleLatticeHom>;

  MulFunc() : MulFunc(Ambient::RStar, ContinuousPower{Rational(0), NegSign::Same}) {}
  /// BadParameters when the representation does not fit the ambient group.
  MulFunc(Ambient ambient, Repr repr);

  static MulFunc trivial(Ambient ambient) { return MulFunc(ambient, ContinuousPower{Rational(0), NegSign::Same}); }
  static MulFunc power(Rational c, NegSign neg = NegSign::Same) {
    return MulFunc(Ambient::RStar, ContinuousPower{std::move(c), neg});
  }
  static MulFunc circle_power(long k) { return MulFunc(Ambient::Circle, ContinuousPower{Rational(k), NegSign::Same}); }
  static MulFunc real_hom(RealLatticeHom h) { return MulFunc(Ambient::RStar, std::move(h)); }
  static MulFunc circle_hom(CircleLatticeHom h) { return MulFunc(Ambient::Circle, std::move(h)); }

  Ambient ambient() const { return ambient_; }
  const Repr& repr() const { return repr_; }
  const ContinuousPower* as_power() const { return std::get_if<ContinuousPower>(&repr_); }
  const RealLatticeHom* as_real_hom() const { return std::get_if<RealLatticeHom>(&repr_); }
  const CircleLatticeHom* as_circle_hom() const { return std::get_if<CircleLatticeHom>(&repr_); }

  /// True when g is identically 1 on its domain.
  bool is_trivial() const;

  /// R*: exact value. Errors: AmbientMismatch, DetOutsideLattice, NotRepresentable.
  SignedFactored eval_real(const SignedFactored& x) const;
  std::optional<SignedFactored> try_eval_real(const SignedFactored& x) const;

  /// Circle: numeric value. For lattice homs z is decomposed in the lattice
  /// (DetOutsideLattice when that fails).
  Complex eval_circle(Complex z, double tol = 1e-9) const;
  /// Circle: exact value for integer powers; NotRepresentable otherwise.
  GaussRational eval_circle_exact(const GaussRational& z) const;
  /// Circle lattice element -> image element (power or lattice hom).
  CircleElem eval_circle_elem(const CircleElem& e) const;

  std::string describe() const;

  friend bool operator==(const MulFunc& a, const MulFunc& b);

 private:
  Ambient ambient_;
  Repr repr_;
};

std::string_view ambient_name(Ambient a);

/// Finite table x -> f(x).
struct TablePoint {
  SignedFactored x;
  SignedFactored value;
};
using ScalarTable = std::vector<TablePoint>;

/// f restricted to a domain; entries the function cannot evaluate are skipped
/// and reported through skipped (when non-null).
ScalarTable tabulate(const MulFunc& f, const std::vector<Rational>& domain, std::vector<Rational>* skipped = nullptr);

}  // namespace locaut
