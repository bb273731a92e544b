#include "wadgelab/error.hpp"

namespace wadge {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BoundExceeded: return "bound-exceeded";
    case ErrorKind::ResourceBound: return "resource-bound";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidSequence: return "invalid-sequence";
    case ErrorKind::HypothesisFailed: return "hypothesis-failed";
    case ErrorKind::InvalidWitness: return "invalid-witness";
    case ErrorKind::NotScattered: return "not-scattered";
    case ErrorKind::InvalidPattern: return "invalid-pattern";
    case ErrorKind::InvalidChain: return "invalid-chain";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
  }
  return "unknown";
}

}  // namespace wadge
