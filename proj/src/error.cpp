#include "fgl/error.hpp"

namespace fgl {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NonUnitJacobian: return "NonUnitJacobian";
    case ErrorCode::NonzeroConstant: return "NonzeroConstant";
    case ErrorCode::NonUnitLinear: return "NonUnitLinear";
    case ErrorCode::NoUnitCoefficient: return "NoUnitCoefficient";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::ResidueMismatch: return "ResidueMismatch";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotADeformation: return "NotADeformation";
    case ErrorCode::ObstructionUnsolvable: return "ObstructionUnsolvable";
    case ErrorCode::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace fgl
