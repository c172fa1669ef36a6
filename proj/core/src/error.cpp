#include "locaut/error.hpp"

namespace locaut {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadIdempotent: return "BadIdempotent";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::IllegalSigma: return "IllegalSigma";
    case ErrorCode::IllegalScalarClass: return "IllegalScalarClass";
    case ErrorCode::NonUnitaryT: return "NonUnitaryT";
    case ErrorCode::SingularT: return "SingularT";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::DetOutsideLattice: return "DetOutsideLattice";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::LatticeIncompatible: return "LatticeIncompatible";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ImageNotInvertibleDomain: return "ImageNotInvertibleDomain";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DomainNotFactorable: return "DomainNotFactorable";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::TooFewGenerators: return "TooFewGenerators";
    case ErrorCode::BadArgs: return "BadArgs";
    case ErrorCode::FileFormat: return "FileFormat";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::GramSingular: return "GramSingular";
    case ErrorCode::ResidualFail: return "ResidualFail";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SigmaUndetermined: return "SigmaUndetermined";
    case ErrorCode::SLRecoveryFailed: return "SLRecoveryFailed";
    case ErrorCode::FTableInconsistent: return "FTableInconsistent";
    case ErrorCode::IrrationalRootUnsupported: return "IrrationalRootUnsupported";
    case ErrorCode::NonUnitaryFit: return "NonUnitaryFit";
  }
  return "Unknown";
}

}  // namespace locaut
