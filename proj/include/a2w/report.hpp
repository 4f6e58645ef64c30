#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace a2w {

enum class Verdict {
  a2,
  not_a2,
  positive_definite_ae,
  not_positive_definite_ae,
  locally_integrable,
  not_locally_integrable,
  inconclusive_necessary_passed,
  marginal,
};

std::string_view to_string(Verdict v);

enum class FindingKind {
  non_hermitian_coefficients,
  failed_leading_minor,
  marginal_coefficients,
  midpoint_violated,
  diagonal_exponent_out_of_range,
  non_positive_alpha,
  exponent_not_integrable,
  exponent_out_of_range,
  unequal_exponents,
  note,
};

std::string_view to_string(FindingKind k);

/// One machine-checkable reason. Indices are 1-based; `coordinate` is the
/// 1-based coordinate of a multivariable exponent matrix, 0 when not
/// applicable.
struct Finding {
  FindingKind kind;
  std::vector<int> indices;
  int coordinate = 0;
  std::string message;
};

struct A2Report {
  Verdict verdict = Verdict::marginal;
  std::vector<Finding> reasons;
  /// x (1D) where the smallest eigenvalue of W(x) is negative.
  std::optional<double> witness;

  /// True for the "yes" verdicts (a2, positive_definite_ae,
  /// locally_integrable, inconclusive_necessary_passed).
  bool passed() const noexcept;

  bool has_reason(FindingKind kind) const noexcept;

  /// Multi-line human-readable summary.
  std::string describe() const;
};

}  // namespace a2w
