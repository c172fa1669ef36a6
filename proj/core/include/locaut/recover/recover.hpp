/// @file recover.hpp
/// Parameter recovery: query a claimed local automorphism and return the
/// canonical-form parameters of the automorphism it must be, with a residual
/// check against fresh samples.
///
/// Engines never throw on a bad oracle. Refutations, budget exhaustion and
/// residual mismatches are recorded in RecoveryReport::failure; only invalid
/// requests (wrong group, bad options) throw.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locaut/autos/automorphism.hpp"
#include "locaut/recover/oracle.hpp"

namespace locaut {

struct RecoverOptions {
  std::size_t budget = 0;             // 0 selects default_budget(n)
  std::size_t residual_samples = 50;  // at least 50
  std::size_t welldef_samples = 20;   // checks of the linear extension psi
  std::size_t probes_per_det = 2;     // recover_GLnR
  std::size_t homomorphism_pairs = 10;  // recover_GLnR, when no character fits
  double tol = 1e-9;
  double numeric_tol = 1e-8;  // residual tolerance for floating-point groups
};

struct RecoveryFailure {
  ErrorCode code;
  std::string detail;
};

/// One identity the engine checked on the way.
struct RecoveryCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// f(d) from probes of determinant d (GL) or g(z) at circle points (U_n).
struct FEntry {
  Rational det;
  std::optional<SignedFactored> value;  // unset when the probes could not be read exactly
  std::string note;
};

struct KEntry {
  CircleElem point;
  Complex z;
  Complex value;
  std::optional<CircleElem> image;  // value decomposed in the lattice
};

struct RecoveryReport {
  std::string method;
  GroupTag group;
  std::optional<Automorphism> recovered;
  std::optional<Kind> kind;
  std::optional<Sigma> sigma;
  std::optional<AnyMatrix> t;  // normalized representative

  bool residual_pass = false;
  std::size_t residual_samples = 0;
  std::size_t residual_failures = 0;
  std::size_t queries_used = 0;
  std::size_t budget = 0;

  std::vector<FEntry> f_table;
  std::vector<KEntry> k_table;
  std::vector<RecoveryCheck> checks;
  std::vector<std::string> notes;
  /// Set by recover_GLnR when the f-table is pairwise consistent but no
  /// single character reproduces it.
  bool local_not_global = false;
  std::optional<RecoveryFailure> failure;

  bool ok() const { return !failure && residual_pass && recovered.has_value(); }
  const RecoveryCheck* check(std::string_view name) const;
  std::string summary() const;
};

/// SL(R, n): basis evaluation, trace Gram, the linear extension psi and the
/// intertwiner of idempotent images.
RecoveryReport recover_SLnR_short(Oracle& o, std::uint64_t seed, const RecoverOptions& opts = {});

/// SL(R or C, n): line images of rank-one idempotents, cross-line ratios,
/// the sigma probe e1 + i e2 and the W T = d I normalization.
RecoveryReport recover_SLn_common(Oracle& o, std::uint64_t seed, const RecoverOptions& opts = {});

/// GL(R, n): SL restriction, then f(d) for each d from probes of
/// determinant d.
RecoveryReport recover_GLnR(Oracle& o, const std::vector<Rational>& dets, std::uint64_t seed,
                            const RecoverOptions& opts = {});

/// SU_n: conj twist from the spectrum of one unitary probe, projection
/// images, least-squares fit of T and polar re-unitarization.
RecoveryReport recover_SUn(Oracle& o, std::uint64_t seed, const RecoverOptions& opts = {});

/// U_n: SU restriction, then the character on the generators of the lattice.
RecoveryReport recover_Un(Oracle& o, const CircleLattice& lattice, std::uint64_t seed,
                          const RecoverOptions& opts = {});

/// Canonical representative of T up to scalars: first nonzero entry in
/// row-major order equal to 1 (exact), or positive real with T kept unitary
/// (numeric).
AnyMatrix normalize_T(const AnyMatrix& t, double tol = 1e-8);

/// True when a = c b for a nonzero scalar c (|c| = 1 additionally for
/// unitary comparisons is not required; the phase is free).
bool proportional(const AnyMatrix& a, const AnyMatrix& b, double tol = 1e-8);

}  // namespace locaut
