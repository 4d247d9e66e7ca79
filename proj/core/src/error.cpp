#include "qapmap/error.hpp"

namespace qapmap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::SizeMismatch: return "size mismatch";
    case ErrorCode::DivisibilityViolation: return "divisibility violation";
    case ErrorCode::SelfLoop: return "self loop";
    case ErrorCode::AsymmetricEdge: return "asymmetric edge";
    case ErrorCode::NonpositiveWeight: return "nonpositive weight";
    case ErrorCode::Unbalanced: return "unbalanced partition";
    case ErrorCode::MatrixCapExceeded: return "matrix cap exceeded";
    case ErrorCode::MalformedHeader: return "malformed header";
    case ErrorCode::EdgeCountMismatch: return "edge count mismatch";
    case ErrorCode::NonIntegerToken: return "non-integer token";
    case ErrorCode::TruncatedFile: return "truncated file";
    case ErrorCode::CountMismatch: return "count mismatch";
    case ErrorCode::NonIncreasingDistances: return "non-increasing distances";
    case ErrorCode::NonpositiveFactor: return "nonpositive factor";
    case ErrorCode::DuplicatePe: return "duplicate PE";
    case ErrorCode::PeOutOfRange: return "PE out of range";
    case ErrorCode::LengthMismatch: return "length mismatch";
    case ErrorCode::IoFailure: return "io failure";
  }
  return "unknown error";
}

}  // namespace qapmap
