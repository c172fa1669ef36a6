// Shared plumbing for the recovery engines: counted queries, checks and the
// residual comparison.
#pragma once

#include <functional>

#include "locaut/matrix/families.hpp"
#include "locaut/random.hpp"
#include "locaut/recover/recover.hpp"

namespace locaut::detail {

class Session {
 public:
  Session(Oracle& oracle, RecoveryReport& report, const RecoverOptions& opts)
      : oracle_(oracle), report_(report), opts_(opts) {}

  /// Counted query; throws BudgetExceeded past the budget and NotInGroup when
  /// the image leaves `expect`.
  ScaledMatrix ask(const AnyMatrix& a, const GroupTag& expect);

  /// Records a check; a failed check throws `code` with the detail.
  void require(std::string name, bool ok, std::string detail, ErrorCode code);

  RecoveryReport& report() { return report_; }
  const RecoverOptions& opts() const { return opts_; }

 private:
  Oracle& oracle_;
  RecoveryReport& report_;
  const RecoverOptions& opts_;
};

/// The image as an exact matrix over S. NotRepresentable for irrational or
/// floating-point images.
template <class S>
Matrix<S> exact_image(const ScaledMatrix& m);

/// Compares the oracle with phi on `count` samples from gen. Fills the
/// residual fields and throws ResidualFail on any mismatch.
void residual_check(Session& s, const Automorphism& phi, const std::function<AnyMatrix(Rng&)>& gen, std::size_t count,
                    double tol, std::uint64_t seed);

/// Runs body with failures captured in the report.
RecoveryReport run_engine(const char* method, Oracle& o, const RecoverOptions& opts,
                          const std::function<void(Session&)>& body);

/// Results of the SL and SU stages that the GL and U_n engines build on.
struct SlStage {
  Kind kind = Kind::Standard;
  MatQ t;
};
SlStage sl_short_stage(Session& s, const GroupTag& sl, std::uint64_t seed);

struct SuStage {
  Sigma sigma = Sigma::Id;
  MatC t;
};
SuStage su_stage(Session& s, const GroupTag& su, std::uint64_t seed);

inline GroupTag restricted(const GroupTag& g) {
  GroupTag r = g;
  if (g.family == Family::GL) r.family = Family::SL;
  if (g.family == Family::Un) r.family = Family::SUn;
  return r;
}

}  // namespace locaut::detail
