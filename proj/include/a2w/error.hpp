#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace a2w {

enum class ErrorCode {
  dimension_too_large,
  dimension_mismatch,
  index_out_of_range,
  singular_matrix,
  not_self_adjoint,
  no_convergence,
  negative_eigenvalue,
  non_positive_input,
  non_integrable,
  invalid_interval,
  invalid_argument,
  evaluation_at_origin,
  midpoint_condition_violated,
  precondition_violated,
  not_a2,
  tolerance_not_met,
  wrong_unitary_family,
  rational_overflow,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code distinguishes failure kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_too_large: return "dimension-too-large";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::singular_matrix: return "singular-matrix";
    case ErrorCode::not_self_adjoint: return "not-self-adjoint";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::negative_eigenvalue: return "negative-eigenvalue";
    case ErrorCode::non_positive_input: return "non-positive-input";
    case ErrorCode::non_integrable: return "non-integrable";
    case ErrorCode::invalid_interval: return "invalid-interval";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::evaluation_at_origin: return "evaluation-at-origin";
    case ErrorCode::midpoint_condition_violated: return "midpoint-condition-violated";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::not_a2: return "not-an-A2-weight";
    case ErrorCode::tolerance_not_met: return "tolerance-not-met";
    case ErrorCode::wrong_unitary_family: return "wrong-unitary-family";
    case ErrorCode::rational_overflow: return "rational-overflow";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace a2w
