#pragma once

#include <stdexcept>
#include <string>

namespace fgl {

// Error kinds surfaced by the library. Names are stable: the CLI prints them
// verbatim and the C API maps them to integer codes.
enum class ErrorCode {
  InvalidArgument = 1,
  DescriptorMismatch,
  NonUnitJacobian,
  NonzeroConstant,
  NonUnitLinear,
  NoUnitCoefficient,
  AxiomFailure,
  TruncationTooSmall,
  IntegralityFailure,
  ResidueMismatch,
  NotInvariant,
  NotADeformation,
  ObstructionUnsolvable,
  NonUniqueSolution,
  NoProgress,
  ParseError,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace fgl
