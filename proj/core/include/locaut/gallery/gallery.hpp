/// @file gallery.hpp
/// Worked examples with machine-checkable certificates: a sampled local
/// automorphism of GL_n(R) that is not an automorphism, local automorphisms
/// of the additive group on a finite-rank Q-subspace, and the sign twist.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locaut/autos/automorphism.hpp"
#include "locaut/local/local_check.hpp"

namespace locaut {

enum class Claim { IsAutomorphism, IsLocalNotGlobal, PairwiseOnlyEvidence };
std::string_view claim_name(Claim c);

/// One identity checked while certifying, e.g. "h(2) h(3) = h(6)".
struct Evidence {
  std::string identity;
  bool holds = false;
  std::string detail;
};

struct Certificate {
  Claim claim = Claim::PairwiseOnlyEvidence;
  std::vector<Evidence> evidence;
  std::vector<PairVerdict> pairs;  // from local_check, when the item is a sample map
  const Evidence* find(std::string_view identity) const;
};

// ---- GL_n(R) -------------------------------------------------------------

struct GlGalleryOptions {
  /// Lattice generators p, q. The rule is f(+-q^b) = q^(b/n) and f = 1 on
  /// every other line, so h(x) = f(x)^n x gives h(p) = p, h(q) = q^2 and
  /// h(pq) = pq.
  Rational p = Rational(2);
  Rational q = Rational(3);
  /// Only determinant-one samples (the map is then the identity there).
  bool det_one = false;
  /// f(-x) = -f(x) on negatives; requires n even (OddN otherwise).
  bool odd_sign = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct GlGalleryItem {
  SampleMap samples;
  Certificate certificate;
};

/// The scalar rule itself, f(det) for det in the lattice of +-p, q.
/// DetOutsideLattice otherwise.
SignedFactored gallery_f(const SignedFactored& det, std::size_t n, const GlGalleryOptions& opts);

/// Errors: BadParameters (n < 3, dependent p and q), OddN.
GlGalleryItem gallery_gl_local_not_global(std::size_t n, const GlGalleryOptions& opts = {});

/// Recomputes the certificate of a GL sample map from scratch: pair
/// verdicts, the h identities at p, q, pq, the interpolating character on
/// the f-table and the homomorphism law on product triples in the samples.
Certificate certify_gl_samples(const SampleMap& m, const GlGalleryOptions& opts);

// ---- additive group ----------------------------------------------------------

/// Vectors are coordinates over k symbolic Q-independent generators.
using QVec = std::vector<Rational>;

/// phi(lambda rep) = lambda image for every rational lambda.
struct LineAssignment {
  QVec rep;
  QVec image;
};

struct AdditiveMap {
  std::size_t k = 0;
  std::vector<std::string> labels;  // generator names, e.g. "1", "sqrt2"
  std::vector<LineAssignment> lines;
  /// Validates nonzero vectors, distinct lines and distinct image lines
  /// (BadParameters), k >= 2 (TooFewGenerators).
  void validate() const;
  /// nullopt when x is not on a listed line.
  std::optional<QVec> eval(const QVec& x) const;
};

struct AdditiveItem {
  AdditiveMap map;
  std::vector<QVec> samples;
  Certificate certificate;
};

/// Default line map on k generators: [g_i] -> [g_i] with scale i and
/// [g_1 + g_2] -> [g_1 + g_2] with scale 1. Errors: TooFewGenerators.
AdditiveMap default_additive_map(std::size_t k);
/// Identity line map with every scale 1.
AdditiveMap identity_additive_map(std::size_t k);

AdditiveItem gallery_additive_R(std::size_t k);
AdditiveItem gallery_additive_R(const AdditiveMap& map);

/// Pairwise Q-linear bijections for all sample pairs (verified exactly),
/// an additivity triple if one exists among the line reps, and a global
/// linear solution when the lines admit one.
Certificate certify_additive(const AdditiveMap& map, const std::vector<QVec>& samples);

// ---- sign twist -------------------------------------------------------------

struct SignTwistItem {
  Automorphism phi;
  Certificate certificate;
};

/// phi(A) = sign(det A) A on GL_n(R). Errors: OddN.
SignTwistItem gallery_sign_twist(std::size_t n, std::uint64_t seed = 0);

}  // namespace locaut
