#pragma once

// Adaptive quadrature for matrix-valued integrands with a power-law
// singularity at the origin.

#include <functional>
#include <vector>

#include "a2w/domain.hpp"
#include "a2w/linalg.hpp"

namespace a2w {

inline constexpr int kDefaultPanelBudget = 20000;

/// Pointwise n x n matrix function together with its singular exponent bound:
/// every entry satisfies |f_ij(x)| <= envelope * |x|^singular_exponent for
/// 0 < |x| <= 1.
struct MatrixIntegrand {
  int n = 1;
  std::function<DenseMatrix(double)> eval;
  double singular_exponent = 0.0;
  double envelope = 1.0;
};

/// Scalar counterpart of MatrixIntegrand.
struct ScalarIntegrand {
  std::function<double(double)> eval;
  double singular_exponent = 0.0;
  double envelope = 1.0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = kDefaultPanelBudget;
};

/// Globally adaptive 15-point Gauss-Kronrod bisection. Intervals straddling
/// 0 are split there first. Panels touching the origin carry the analytic
/// error bound 2 * envelope * len^(p) / p (p = singular_exponent + 1) and are
/// forced to split while longer than 1, which grades the mesh geometrically
/// toward 0. Stops once every entry satisfies
/// err_ij <= abs_tol + rel_tol * |I_ij|.
///
/// Throws non_integrable if the interval touches 0 and singular_exponent <= -1,
/// tolerance_not_met when the panel budget runs out.
DenseMatrix integrate(const MatrixIntegrand& f, const Interval& interval,
                      const QuadratureOptions& options);

double integrate(const ScalarIntegrand& f, const Interval& interval,
                 const QuadratureOptions& options);

/// Entrywise average over I with per-entry error <= tol * (1 + |result|),
/// symmetrized.
SelfAdjoint<cplx> average_numeric(const MatrixIntegrand& f,
                                  const Interval& interval, double tol,
                                  int max_panels = kDefaultPanelBudget);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre polynomial; cached per order.
const GaussRule& gauss_legendre(int order);

}  // namespace a2w
