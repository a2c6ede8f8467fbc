#pragma once

#include <stdexcept>
#include <string>

namespace tricover {

/// Broad class of a failure; the CLI maps these onto exit codes.
enum class ErrorClass {
  input,      // malformed or out-of-domain arguments
  numerical,  // numerical precondition violated (seams, indeterminate forms)
};

enum class ErrorCode {
  degenerate_matrix,
  indeterminate_cross_ratio,
  degenerate_anchor,
  domain_error,
  lift_step_too_large,
  off_circle,
  det_not_one,
  invalid_chart,
  bad_index,
  seam_too_close,
  non_finite_entry,
  dimension_mismatch,
  not_a_permutation,
  coincident_ideal_points,
  parse_error,
  invalid_argument,
};

const char* to_string(ErrorCode code);
ErrorClass classify(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const { return code_; }
  ErrorClass error_class() const { return classify(code_); }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

}  // namespace tricover
