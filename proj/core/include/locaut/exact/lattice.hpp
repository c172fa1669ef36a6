/// @file lattice.hpp
/// Finitely generated multiplicative lattices in R* and in the unit circle,
/// and homomorphisms defined by generator images.
///
/// A real lattice has positive generators with Q-independent logarithms and
/// optionally the sign generator -1. Coordinates are rational, so the lattice
/// is really its divisible hull; this is what lets n-th roots stay inside it.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locaut/exact/factored.hpp"

namespace locaut {

enum class Ambient { RStar, Circle };

struct RealLattice {
  std::vector<SignedFactored> generators;
  bool with_sign = false;

  /// Validates positivity and independence (DependentGenerators, BadParameters).
  static RealLattice make(std::vector<SignedFactored> generators, bool with_sign);
  static RealLattice make(const std::vector<Rational>& generators, bool with_sign);

  std::size_t rank() const { return generators.size(); }
  /// Primes occurring in some generator.
  std::vector<mpz_class> support() const;
};

bool operator==(const RealLattice& a, const RealLattice& b);

struct RealCoords {
  bool negative = false;
  std::vector<Rational> v;
  friend bool operator==(const RealCoords&, const RealCoords&) = default;
};

/// x = (-1)^negative * prod gen_i^{v_i}, or nullopt (not in the lattice).
std::optional<RealCoords> lattice_decompose(const SignedFactored& x, const RealLattice& lattice);
SignedFactored lattice_element(const RealLattice& lattice, const RealCoords& coords);

/// Generator of the unit circle: either e^{2 pi i t} with rational t (torsion)
/// or a symbolic angle theta assumed independent of all other generators.
struct AngleGen {
  std::string label;
  std::optional<Rational> turns;
  double angle = 0.0;  // radians; derived from turns when present

  static AngleGen rational(std::string label, Rational turns);
  static AngleGen symbolic(std::string label, double angle);

  bool is_torsion() const { return turns.has_value(); }
  /// Order of a torsion generator (denominator of turns).
  long order() const;
  Complex witness() const;
};

struct CircleLattice {
  std::vector<AngleGen> generators;

  /// Validates label uniqueness and unit-modulus witnesses.
  static CircleLattice make(std::vector<AngleGen> generators);
  std::size_t rank() const { return generators.size(); }
};

bool operator==(const CircleLattice& a, const CircleLattice& b);

/// Exponent vector over the generators of a circle lattice. Torsion
/// coordinates are integers taken modulo the generator's order.
struct CircleElem {
  std::vector<Rational> v;
};

Complex circle_value(const CircleLattice& lattice, const CircleElem& e);
bool circle_equal(const CircleLattice& lattice, const CircleElem& a, const CircleElem& b);
CircleElem circle_add(const CircleElem& a, const CircleElem& b);
CircleElem circle_scale(const CircleElem& a, const Rational& q);

struct CircleSearch {
  long max_denominator = 6;
  long max_abs = 6;  // bound on |coordinate| for free generators
};

/// Bounded search for exponents with |value - z| <= tol; simplest match first.
std::optional<CircleElem> decompose_circle(Complex z, const CircleLattice& lattice, double tol,
                                           const CircleSearch& search = {});

/// Homomorphism on a real lattice given by generator images.
struct RealLatticeHom {
  RealLattice lattice;
  std::vector<SignedFactored> images;
  int sign_image = 1;

  std::optional<SignedFactored> try_eval(const SignedFactored& x) const;
  /// Throws DetOutsideLattice when x is not in the lattice.
  SignedFactored eval(const SignedFactored& x) const;
};

bool operator==(const RealLatticeHom& a, const RealLatticeHom& b);

/// ImageNotInvertibleDomain on a zero image; BadParameters when a positive
/// generator has a negative image or the sign image is not +-1.
RealLatticeHom hom_on_lattice(const RealLattice& lattice, const std::vector<Rational>& images, int sign_image = 1);
RealLatticeHom hom_on_lattice(const RealLattice& lattice, std::vector<SignedFactored> images, int sign_image = 1);

/// Homomorphism on a circle lattice; images are exponent vectors.
struct CircleLatticeHom {
  CircleLattice lattice;
  std::vector<CircleElem> images;

  CircleElem eval(const CircleElem& e) const;
  /// Image matrix G with column k = image of generator k.
  std::vector<std::vector<Rational>> matrix() const;
};

CircleLatticeHom circle_hom(const CircleLattice& lattice, std::vector<CircleElem> images);

}  // namespace locaut
