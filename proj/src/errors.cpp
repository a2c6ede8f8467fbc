#include "tricover/errors.hpp"

namespace tricover {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::degenerate_matrix: return "DegenerateMatrix";
    case ErrorCode::indeterminate_cross_ratio: return "IndeterminateCrossRatio";
    case ErrorCode::degenerate_anchor: return "DegenerateAnchor";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::lift_step_too_large: return "LiftStepTooLarge";
    case ErrorCode::off_circle: return "OffCircle";
    case ErrorCode::det_not_one: return "DetNotOne";
    case ErrorCode::invalid_chart: return "InvalidChart";
    case ErrorCode::bad_index: return "BadIndex";
    case ErrorCode::seam_too_close: return "SeamTooClose";
    case ErrorCode::non_finite_entry: return "NonFiniteEntry";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_a_permutation: return "NotAPermutation";
    case ErrorCode::coincident_ideal_points: return "CoincidentIdealPoints";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::indeterminate_cross_ratio:
    case ErrorCode::lift_step_too_large:
    case ErrorCode::seam_too_close:
    case ErrorCode::non_finite_entry:
      return ErrorClass::numerical;
    default:
      return ErrorClass::input;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace tricover
