#include "nullevo/error.hpp"

namespace nullevo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::too_few_samples: return "too-few-samples";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::irregular_curve: return "irregular-curve";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::invalid_frame: return "invalid-frame";
    case ErrorCode::constraint_violation: return "constraint-violation";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::pole: return "pole";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::too_few_samples:
    case ErrorCode::out_of_range:
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_frame:
    case ErrorCode::constraint_violation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what, std::optional<double> where)
    : std::runtime_error(std::string(to_string(code)) + ": " + what +
                         (where ? " (at " + std::to_string(*where) + ")" : std::string())),
      code_(code),
      where_(where) {}

}  // namespace nullevo
