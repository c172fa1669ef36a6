/// @file error.hpp
/// Error codes shared by every module. Verdicts (NotInLattice, Refuted, ...)
/// are ordinary return values; an Error always means the request was invalid.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locaut {

enum class ErrorCode {
  ZeroInput,
  SingularMatrix,
  RegimeMismatch,
  DimensionMismatch,
  BadIdempotent,
  BadParameters,
  IllegalSigma,
  IllegalScalarClass,
  NonUnitaryT,
  SingularT,
  NotInGroup,
  DetOutsideLattice,
  GroupMismatch,
  LatticeIncompatible,
  AmbientMismatch,
  ImageNotInvertibleDomain,
  DependentGenerators,
  NotRepresentable,
  TooFewSamples,
  DomainNotFactorable,
  OddN,
  TooFewGenerators,
  BadArgs,
  FileFormat,
  OracleFailure,
  GramSingular,
  ResidualFail,
  BudgetExceeded,
  SigmaUndetermined,
  SLRecoveryFailed,
  FTableInconsistent,
  IrrationalRootUnsupported,
  NonUnitaryFit,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace locaut
