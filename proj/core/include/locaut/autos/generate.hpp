/// @file generate.hpp
/// Random canonical-form automorphisms, random group elements and the
/// homomorphism-law check built on them.
#pragma once

#include <cstdint>
#include <string>

#include "locaut/autos/automorphism.hpp"
#include "locaut/random.hpp"

namespace locaut {

/// Two free symbolic angles, used for U_n characters and elements.
const CircleLattice& default_circle_lattice();

/// A random g in the class the form needs (M1r / M2r, or Mu), by rejection.
/// Real groups draw |x|^c with c in [-2, 2] or a character on <-1, 2, 3>.
MulFunc random_character(const GroupTag& g, int eps, Rng& rng);

/// Random T (rational, Gaussian rational, or unitary; numeric_t picks a
/// floating-point unitary) and, where the group has one, a random g.
Automorphism random_automorphism(const GroupTag& g, Kind kind, Sigma sigma, Rng& rng, bool numeric_t = false);

/// Random member of g. GL(R) determinants are +-2^a 3^b with |a|, |b| <= 2;
/// U_n determinants lie on default_circle_lattice().
AnyMatrix random_element(const GroupTag& g, Rng& rng);

struct HomomorphismCheck {
  std::size_t tested = 0;
  std::size_t failed = 0;
  std::string first_failure;  // empty when nothing failed
};

/// phi(AB) = phi(A) phi(B) on random pairs, exactly unless a floating-point
/// matrix is involved (then entrywise within tol).
HomomorphismCheck check_homomorphism(const Automorphism& phi, std::size_t pairs, Rng& rng, double tol = 1e-8);

}  // namespace locaut
