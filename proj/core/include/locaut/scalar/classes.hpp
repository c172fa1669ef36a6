/// @file classes.hpp
/// Membership tests for the scalar-character classes and their pairwise
/// ("local") relaxations.
///
/// For a character g and epsilon = +1 (standard kind) or -1 (contragredient
/// kind), the induced map is f(x) = g(x)^n x^epsilon. The class M(n, epsilon)
/// consists of the g whose f is an automorphism of R*.
#pragma once

#include <string>
#include <vector>

#include "locaut/scalar/mulfunc.hpp"

namespace locaut {

struct ClassVerdict {
  bool yes = false;
  std::string certificate;
  /// Set when the verdict is "yes on this lattice": the extension from the
  /// finitely generated lattice to a global character is assumed, not computed.
  bool assumes_extension = false;
};

/// g such that x -> g(x)^n x is an automorphism of R*.
ClassVerdict check_M1r(const MulFunc& g, std::size_t n);
/// g such that x -> g(x)^n / x is an automorphism of R*.
ClassVerdict check_M2r(const MulFunc& g, std::size_t n);
ClassVerdict check_Mr(const MulFunc& g, std::size_t n, int epsilon);
/// g such that z -> g(z)^n z is an automorphism of the unit circle.
ClassVerdict check_Mu(const MulFunc& g, std::size_t n);

/// Positive representatives with their images.
struct ClassEntry {
  SignedFactored rep;
  SignedFactored image;
};
struct ClassMap {
  std::vector<ClassEntry> entries;
};

/// Class-respecting test on positives: 1 -> 1, x ~ y iff k(x) ~ k(y), and
/// x = y^q forces k(x) = k(y)^q.
ClassVerdict check_P(const ClassMap& k);

/// Positives to positives, odd symmetry, and (P) on the positive part.
ClassVerdict check_LAR(const MulFunc& h);
ClassVerdict check_LAR(const ScalarTable& h);

/// Independent route for tables: every pair (and every single point) is
/// interpolated by an injective Q-linear map on log-exponent vectors,
/// decided by rank comparisons, plus the sign rule.
ClassVerdict lar_by_interpolation(const ScalarTable& h);

struct PairCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  bool ok = false;
  std::string reason;
};

struct DomainReport {
  bool all_ok = true;
  std::vector<PairCertificate> pairs;  // ordered by (i, j), i < j
};

/// Decides for every pair of table points whether one character of class
/// M(n, epsilon) matches f at both.
DomainReport check_LMr_on_domain(const ScalarTable& f, std::size_t n, int epsilon);
DomainReport check_LM1r_on_domain(const ScalarTable& f, std::size_t n);
DomainReport check_LM1r_on_domain(const MulFunc& f, std::size_t n, const std::vector<Rational>& domain);

/// A single character of class M(n, epsilon), on the lattice spanned by the
/// table points, that matches f on the whole table; or the reason none exists.
struct ExtensionResult {
  std::optional<RealLatticeHom> witness;
  std::string reason;
};
ExtensionResult interpolating_character(const ScalarTable& f, std::size_t n, int epsilon);

}  // namespace locaut
