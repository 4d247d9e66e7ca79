#pragma once

#include <stdexcept>
#include <string>

namespace qapmap {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  SizeMismatch,           // graph / topology / mapping dimensions disagree
  DivisibilityViolation,  // k does not divide the vertex count
  SelfLoop,
  AsymmetricEdge,
  NonpositiveWeight,
  Unbalanced,             // refine_balanced got an unbalanced partition
  MatrixCapExceeded,      // dense materialization above the configured cap
  MalformedHeader,
  EdgeCountMismatch,
  NonIntegerToken,
  TruncatedFile,
  CountMismatch,          // factor/distance token counts disagree
  NonIncreasingDistances,
  NonpositiveFactor,
  DuplicatePe,
  PeOutOfRange,
  LengthMismatch,
  IoFailure,
};

const char* error_code_name(ErrorCode code);

/// All library errors carry a code so callers can react to the class of
/// failure without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qapmap
