#include "a2w/estimator.hpp"

#include <cmath>
#include <string>

#include "a2w/quadrature.hpp"
#include "a2w/scalar_power.hpp"

namespace a2w {
namespace {

void require_positive(const Hermitian& h, const char* name) {
  const auto eig = sym_eigen(h);
  const double top = eig.values(eig.values.size() - 1);
  if (!(top > 0.0) || eig.values(0) < -1e-12 * top) {
    throw Error(ErrorCode::non_positive_input,
                std::string(name) + " is not positive definite (min eigenvalue " +
                    std::to_string(eig.values(0)) + ")");
  }
}

void require_same_dim(const Hermitian& a, const Hermitian& b) {
  if (a.dim() != b.dim() || a.dim() == 0) {
    throw Error(ErrorCode::dimension_mismatch,
                "averages of W and W^-1 differ in size");
  }
}

}  // namespace

double a2_functional_trace(const Hermitian& avg_w, const Hermitian& avg_winv,
                           double lower_tol) {
  require_same_dim(avg_w, avg_winv);
  require_positive(avg_w, "<W>");
  require_positive(avg_winv, "<W^-1>");
  const auto& a = avg_w.matrix();
  const auto& b = avg_winv.matrix();
  const auto n = static_cast<double>(a.rows());
  double trace = 0.0;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const cplx t = a(i, j) * b(j, i);
      trace += t.real();
      scale += std::abs(t);
    }
  }
  if (trace < n - lower_tol * std::max(n, scale)) {
    throw Error(ErrorCode::non_positive_input,
                "trace functional " + std::to_string(trace) +
                    " is below the dimension bound");
  }
  return trace;
}

double a2_functional_norm(const Hermitian& avg_w, const Hermitian& avg_winv,
                          double lower_tol) {
  require_same_dim(avg_w, avg_winv);
  require_positive(avg_w, "<W>");
  require_positive(avg_winv, "<W^-1>");
  const DenseMatrix p = sqrt_psd(avg_w).matrix() * sqrt_psd(avg_winv).matrix();
  const double norm = operator_norm(p);
  const double value = norm * norm;
  if (value < 1.0 - lower_tol * std::max(1.0, value)) {
    throw Error(ErrorCode::non_positive_input,
                "norm functional " + std::to_string(value) + " is below 1");
  }
  return value;
}

double a2_functional(Functional f, const Hermitian& avg_w,
                     const Hermitian& avg_winv) {
  return f == Functional::trace ? a2_functional_trace(avg_w, avg_winv)
                                : a2_functional_norm(avg_w, avg_winv);
}

Hermitian average_symbolic(const SymbolicPowerMatrix& w, const Interval& I) {
  const int n = w.dim();
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx a = w.coeff()(i, j);
      if (a == cplx(0.0, 0.0)) {
        out(i, j) = 0.0;
        continue;
      }
      const Rational& g = w.exponents()(i, j);
      if (I.contains_origin() && g <= Rational(-1)) {
        throw Error(ErrorCode::non_integrable,
                    "entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") with exponent " +
                        g.to_string() + " is not integrable near 0");
      }
      out(i, j) = w.global_scale() * a * average_abs_pow(g, I);
    }
  }
  return Hermitian::symmetrize(out);
}

double functional_on(const SymbolicPowerMatrix& w,
                     const SymbolicPowerMatrix& winv, Functional f,
                     const Interval& I) {
  return a2_functional(f, average_symbolic(w, I), average_symbolic(winv, I));
}

double functional_on(const Type2Weight& w, Functional f, const Interval& I,
                     double quadrature_tol) {
  const Hermitian avg_w = average_numeric(matrix_integrand(w), I, quadrature_tol);
  const Hermitian avg_winv =
      average_numeric(matrix_integrand(w.inverse()), I, quadrature_tol);
  return a2_functional(f, avg_w, avg_winv);
}

SupSearchResult estimate_a2(const SymbolicPowerMatrix& w, Functional f,
                            const SupSearchConfig& cfg,
                            const IntervalObserver& observer) {
  const A2Report report = check_a2(w);
  if (report.verdict != Verdict::a2) {
    throw Error(ErrorCode::precondition_violated,
                "estimate_a2 needs an A2 power weight (verdict " +
                    std::string(to_string(report.verdict)) + ")");
  }
  const SymbolicPowerMatrix winv = symbolic_inverse(w);
  return maximize_over_intervals(
      [&](const Interval& I) { return functional_on(w, winv, f, I); }, cfg, f,
      observer);
}

SupSearchResult estimate_a2(const Type2Weight& w, Functional f,
                            const SupSearchConfig& cfg,
                            const IntervalObserver& observer) {
  const A2Report report = check_necessary_a2(w);
  if (!report.passed()) {
    throw Error(ErrorCode::precondition_violated,
                "W or W^-1 is not locally integrable");
  }
  return maximize_over_intervals(
      [&](const Interval& I) {
        return functional_on(w, f, I, cfg.quadrature_tol);
      },
      cfg, f, observer);
}

}  // namespace a2w
