#include "kcbs/error.hpp"

namespace kcbs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::NotProjector: return "NotProjector";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::ClosureFailure: return "ClosureFailure";
    case ErrorKind::ConventionMismatch: return "ConventionMismatch";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

}  // namespace kcbs
