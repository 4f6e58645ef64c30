#include "a2w/report.hpp"

#include <sstream>

namespace a2w {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::a2: return "a2";
    case Verdict::not_a2: return "not_a2";
    case Verdict::positive_definite_ae: return "positive_definite_ae";
    case Verdict::not_positive_definite_ae: return "not_positive_definite_ae";
    case Verdict::locally_integrable: return "locally_integrable";
    case Verdict::not_locally_integrable: return "not_locally_integrable";
    case Verdict::inconclusive_necessary_passed:
      return "inconclusive_necessary_passed";
    case Verdict::marginal: return "marginal";
  }
  return "?";
}

std::string_view to_string(FindingKind k) {
  switch (k) {
    case FindingKind::non_hermitian_coefficients:
      return "non_hermitian_coefficients";
    case FindingKind::failed_leading_minor: return "failed_leading_minor";
    case FindingKind::marginal_coefficients: return "marginal_coefficients";
    case FindingKind::midpoint_violated: return "midpoint_violated";
    case FindingKind::diagonal_exponent_out_of_range:
      return "diagonal_exponent_out_of_range";
    case FindingKind::non_positive_alpha: return "non_positive_alpha";
    case FindingKind::exponent_not_integrable: return "exponent_not_integrable";
    case FindingKind::exponent_out_of_range: return "exponent_out_of_range";
    case FindingKind::unequal_exponents: return "unequal_exponents";
    case FindingKind::note: return "note";
  }
  return "?";
}

bool A2Report::passed() const noexcept {
  return verdict == Verdict::a2 || verdict == Verdict::positive_definite_ae ||
         verdict == Verdict::locally_integrable ||
         verdict == Verdict::inconclusive_necessary_passed;
}

bool A2Report::has_reason(FindingKind kind) const noexcept {
  for (const auto& f : reasons)
    if (f.kind == kind) return true;
  return false;
}

std::string A2Report::describe() const {
  std::ostringstream os;
  os << "verdict: " << to_string(verdict) << '\n';
  for (const auto& f : reasons) {
    os << "  - " << to_string(f.kind);
    if (!f.indices.empty()) {
      os << " (";
      for (std::size_t k = 0; k < f.indices.size(); ++k)
        os << (k ? "," : "") << f.indices[k];
      os << ')';
    }
    if (f.coordinate > 0) os << " [coordinate " << f.coordinate << ']';
    if (!f.message.empty()) os << ": " << f.message;
    os << '\n';
  }
  if (witness) {
    os.precision(17);
    os << "  witness x = " << *witness << '\n';
  }
  return os.str();
}

}  // namespace a2w
