#include "xstates/error.hpp"

namespace xstates {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::MalformedState: return "malformed-state";
    case ErrorKind::NotGeneric: return "not-generic";
    case ErrorKind::ReductionFailed: return "reduction-failed";
    case ErrorKind::NotSameOrbit: return "not-same-orbit";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::LocalizationViolated: return "localization-violated";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::EvaluationError: return "evaluation-error";
    case ErrorKind::InternalError: return "internal-error";
  }
  return "unknown";
}

}  // namespace xstates
