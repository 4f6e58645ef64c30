#include "a2w/type1.hpp"

#include <cmath>
#include <string>

#include "a2w/scalar_power.hpp"
#include "a2w/search.hpp"

namespace a2w {

ExponentMatrix::ExponentMatrix(int n, Rational fill)
    : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                   fill) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "negative dimension");
}

ExponentMatrix ExponentMatrix::from_diagonal(std::span<const Rational> diag) {
  const int n = static_cast<int>(diag.size());
  ExponentMatrix e(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = midpoint(diag[i], diag[j]);
  return e;
}

std::vector<Rational> ExponentMatrix::diagonal() const {
  std::vector<Rational> d;
  for (int i = 0; i < n_; ++i) d.push_back((*this)(i, i));
  return d;
}

Rational ExponentMatrix::trace() const {
  Rational t(0);
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool ExponentMatrix::satisfies_midpoint() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != midpoint((*this)(i, i), (*this)(j, j))) return false;
  return true;
}

ExponentMatrix ExponentMatrix::operator-() const {
  ExponentMatrix out(n_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = -data_[k];
  return out;
}

SymbolicPowerMatrix::SymbolicPowerMatrix(DenseMatrix coeff,
                                         ExponentMatrix exponents,
                                         double global_scale)
    : coeff_(std::move(coeff)),
      exponents_(std::move(exponents)),
      global_scale_(global_scale) {
  const auto n = coeff_.rows();
  if (n < 1 || n > kMaxDimension || coeff_.cols() != n ||
      exponents_.dim() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "power matrix needs n x n coefficients and exponents, "
                "1 <= n <= 8");
  }
  if (!coeff_.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "non-finite coefficient");
  }
  if (!(global_scale_ > 0.0) || !std::isfinite(global_scale_)) {
    throw Error(ErrorCode::invalid_argument, "global scale must be positive");
  }
}

SymbolicPowerMatrix SymbolicPowerMatrix::scaled(double c) const {
  if (!(c > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "scale factor must be positive");
  }
  return SymbolicPowerMatrix(coeff_ * c, exponents_, global_scale_);
}

ExponentMatrix SymbolicPowerMatrix::normalized_exponents() const {
  ExponentMatrix e = exponents_;
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coeff_(i, j) == cplx(0.0, 0.0))
        e(i, j) = midpoint(e(i, i), e(j, j));
  return e;
}

SymbolicPowerMatrix build_type1(const DenseMatrix& coeff,
                                std::span<const Rational> diag_exponents) {
  if (coeff.rows() != static_cast<Eigen::Index>(diag_exponents.size())) {
    throw Error(ErrorCode::dimension_mismatch,
                "coefficient matrix and exponent list sizes differ");
  }
  return SymbolicPowerMatrix(coeff,
                             ExponentMatrix::from_diagonal(diag_exponents));
}

SymbolicPowerMatrix build_type1_raw(const DenseMatrix& coeff,
                                    const ExponentMatrix& exponents) {
  return SymbolicPowerMatrix(coeff, exponents);
}

DenseMatrix evaluate(const SymbolicPowerMatrix& w, double x) {
  if (x == 0.0 || !std::isfinite(x)) {
    throw Error(ErrorCode::evaluation_at_origin,
                "power matrix evaluated at x = 0");
  }
  const int n = w.dim();
  const double ax = std::abs(x);
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = w.global_scale() * w.coeff()(i, j) *
                  std::pow(ax, w.exponents()(i, j).to_double());
  return out;
}

const std::vector<double>& witness_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g = logspace(1e-8, 1e8, 65);
    const std::size_t half = g.size();
    for (std::size_t k = 0; k < half; ++k) g.push_back(-g[k]);
    return g;
  }();
  return grid;
}

Positivity append_coefficient_findings(const DenseMatrix& coeff,
                                       A2Report& report) {
  const double defect = SelfAdjoint<cplx>::hermitian_defect(coeff);
  if (defect > kHermitianTol * max_abs(coeff)) {
    report.reasons.push_back({FindingKind::non_hermitian_coefficients,
                              {},
                              0,
                              "coefficient matrix is not self-adjoint (max "
                              "|A - A*| = " + std::to_string(defect) + ")"});
    return Positivity::not_positive;
  }
  const auto check = is_positive_definite(SelfAdjoint<cplx>::symmetrize(coeff));
  if (check.verdict == Positivity::not_positive) {
    const int k = check.failed_minor.value_or(0);
    std::string msg = "coefficient matrix is not positive definite";
    if (k > 0) {
      msg += "; leading minor " + std::to_string(k) + " = " +
             std::to_string(check.leading_minors[k - 1]);
    }
    report.reasons.push_back({FindingKind::failed_leading_minor,
                              k > 0 ? std::vector<int>{k} : std::vector<int>{},
                              0, msg});
  } else if (check.verdict == Positivity::marginal) {
    report.reasons.push_back(
        {FindingKind::marginal_coefficients,
         check.failed_minor ? std::vector<int>{*check.failed_minor}
                            : std::vector<int>{},
         0,
         "minor test and eigenvalue test disagree or are within tolerance of "
         "zero (min eigenvalue " + std::to_string(check.min_eigenvalue) + ")"});
  }
  return check.verdict;
}

bool append_midpoint_findings(const ExponentMatrix& exponents,
                              const DenseMatrix& coeff, int coordinate,
                              A2Report& report) {
  bool ok = true;
  const int n = exponents.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational mid = midpoint(exponents(i, i), exponents(j, j));
      const bool upper = coeff(i, j) == cplx(0.0, 0.0) || exponents(i, j) == mid;
      const bool lower = coeff(j, i) == cplx(0.0, 0.0) || exponents(j, i) == mid;
      if (upper && lower) continue;
      ok = false;
      const Rational& bad = upper ? exponents(j, i) : exponents(i, j);
      report.reasons.push_back(
          {FindingKind::midpoint_violated,
           {i + 1, j + 1},
           coordinate,
           "exponent " + bad.to_string() + " differs from midpoint " +
               mid.to_string()});
    }
  }
  return ok;
}

A2Report check_positive_definite_ae(const SymbolicPowerMatrix& w) {
  A2Report report;
  const Positivity coeff_state = append_coefficient_findings(w.coeff(), report);
  const bool non_hermitian =
      report.has_reason(FindingKind::non_hermitian_coefficients);
  const bool midpoint_ok =
      append_midpoint_findings(w.exponents(), w.coeff(), 0, report);

  if (coeff_state == Positivity::positive && midpoint_ok) {
    report.verdict = Verdict::positive_definite_ae;
    return report;
  }
  const bool hard_failure = non_hermitian || !midpoint_ok ||
                            coeff_state == Positivity::not_positive;
  report.verdict =
      hard_failure ? Verdict::not_positive_definite_ae : Verdict::marginal;

  const bool scan = !midpoint_ok || (!non_hermitian &&
                                     coeff_state != Positivity::positive);
  if (scan) {
    for (double x : witness_grid()) {
      const DenseMatrix wx = evaluate(w, x);
      const auto eig = sym_eigen(SelfAdjoint<cplx>::symmetrize(wx));
      if (eig.values(0) < -1e-12 * operator_norm(wx)) {
        report.witness = x;
        break;
      }
    }
  }
  return report;
}

A2Report check_a2(const SymbolicPowerMatrix& w) {
  A2Report report = check_positive_definite_ae(w);
  bool range_ok = true;
  for (int i = 0; i < w.dim(); ++i) {
    const Rational& g = w.exponents()(i, i);
    if (!scalar_is_a2(g)) {
      range_ok = false;
      report.reasons.push_back(
          {FindingKind::diagonal_exponent_out_of_range,
           {i + 1, i + 1},
           0,
           "diagonal exponent " + g.to_string() + " is outside (-1, 1)"});
    }
  }
  if (report.verdict == Verdict::positive_definite_ae) {
    report.verdict = range_ok ? Verdict::a2 : Verdict::not_a2;
  }
  return report;
}

namespace {

void require_midpoint(const ExponentMatrix& e) {
  if (!e.satisfies_midpoint()) {
    throw Error(ErrorCode::midpoint_condition_violated,
                "exponents do not satisfy the midpoint condition");
  }
}

}  // namespace

PowerTerm symbolic_det(const SymbolicPowerMatrix& w) {
  const ExponentMatrix e = w.normalized_exponents();
  require_midpoint(e);
  const double s = std::pow(w.global_scale(), w.dim());
  return {s * leibniz_det(w.coeff()), e.trace()};
}

PowerTerm symbolic_minor_det(const SymbolicPowerMatrix& w, int i, int j) {
  const int n = w.dim();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::index_out_of_range,
                "minor index (" + std::to_string(i) + "," + std::to_string(j) +
                    ") out of range");
  }
  const ExponentMatrix e = w.normalized_exponents();
  require_midpoint(e);
  const double s = std::pow(w.global_scale(), n - 1);
  return {s * leibniz_det(delete_row_col(w.coeff(), i, j)),
          e.trace() - e(i, j)};
}

SymbolicPowerMatrix symbolic_inverse(const SymbolicPowerMatrix& w) {
  const A2Report pd = check_positive_definite_ae(w);
  if (pd.verdict != Verdict::positive_definite_ae) {
    throw Error(ErrorCode::precondition_violated,
                "symbolic inverse needs a weight that is positive definite "
                "a.e. (verdict " + std::string(to_string(pd.verdict)) + ")");
  }
  const DenseMatrix& a = w.coeff();
  const double det = leibniz_det(a).real();
  if (!(std::abs(det) > 1e-12 * std::pow(max_abs(a), w.dim()))) {
    throw Error(ErrorCode::singular_matrix, "coefficient matrix is singular");
  }
  return SymbolicPowerMatrix(adjugate(a), -w.normalized_exponents(),
                             1.0 / (w.global_scale() * det));
}

double a2_upper_bound(const SymbolicPowerMatrix& w) {
  const A2Report report = check_a2(w);
  if (report.verdict != Verdict::a2) {
    throw Error(ErrorCode::not_a2, "a2_upper_bound needs an A2 weight");
  }
  const DenseMatrix& a = w.coeff();
  const ExponentMatrix e = w.normalized_exponents();
  const int n = w.dim();
  const double det = std::abs(leibniz_det(a));
  double factor = 0.0;
  double constants = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double minor = std::abs(leibniz_det(delete_row_col(a, i, j)));
      factor = std::max(factor, std::abs(a(i, j)) * minor / det);
      constants += power_a2_constant(e(i, j).to_double());
    }
  }
  return factor * constants;
}

}  // namespace a2w
