#include "szego/error.hpp"

namespace szego {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveCapacity: return "NonPositiveCapacity";
    case ErrorCode::CurveSelfIntersects: return "CurveSelfIntersects";
    case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::BadSampleCount: return "BadSampleCount";
    case ErrorCode::DilationNotGreaterThanOne: return "DilationNotGreaterThanOne";
    case ErrorCode::MismatchedTruncation: return "MismatchedTruncation";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::BranchJumpDetected: return "BranchJumpDetected";
    case ErrorCode::AliasingDetected: return "AliasingDetected";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::PairingFailed: return "PairingFailed";
    case ErrorCode::SingularValueAtOne: return "SingularValueAtOne";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::TruncationExceedsSymbol: return "TruncationExceedsSymbol";
    case ErrorCode::TruncationExceedsTable: return "TruncationExceedsTable";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonzeroMean: return "NonzeroMean";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroDeterminant: return "ZeroDeterminant";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace szego
