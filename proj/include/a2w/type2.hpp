#pragma once

// Type 2 matrix power functions W(x) = U(x) diag(alpha_i |x|^gamma_i) U(x)*.

#include <span>
#include <string_view>
#include <vector>

#include "a2w/linalg.hpp"
#include "a2w/quadrature.hpp"
#include "a2w/rational.hpp"
#include "a2w/report.hpp"

namespace a2w {

enum class UnitaryFamily { identity, rotation2d, rotation3d_euler };

std::string_view to_string(UnitaryFamily u);
UnitaryFamily parse_unitary_family(std::string_view name);

/// Elementary rotations about the coordinate axes by angle theta.
Eigen::Matrix3d rotation_x(double theta);
Eigen::Matrix3d rotation_y(double theta);
Eigen::Matrix3d rotation_z(double theta);

/// U(x) for the family: identity, the planar rotation by angle x, or
/// R_x(x) R_y(x) R_z(x) in three dimensions.
Eigen::MatrixXd unitary_matrix(UnitaryFamily family, int n, double x);

class Type2Weight {
 public:
  /// rotation2d needs n = 2, rotation3d_euler n = 3; 1 <= n <= 8.
  Type2Weight(std::vector<double> alphas, std::vector<Rational> gammas,
              UnitaryFamily unitary);

  int dim() const noexcept { return static_cast<int>(alphas_.size()); }
  const std::vector<double>& alphas() const noexcept { return alphas_; }
  const std::vector<Rational>& gammas() const noexcept { return gammas_; }
  UnitaryFamily unitary() const noexcept { return unitary_; }

  /// Eigenvalue data of W^-1: (1/alpha_i, -gamma_i). Requires alpha_i != 0.
  Type2Weight inverse() const;

  /// min_i gamma_i as a double.
  double min_exponent() const;

 private:
  std::vector<double> alphas_;
  std::vector<Rational> gammas_;
  UnitaryFamily unitary_;
};

/// W(x). Throws evaluation_at_origin for x = 0 if some gamma_i < 0.
SelfAdjoint<cplx> evaluate_type2(const Type2Weight& w, double x);

/// W as a quadrature integrand, with envelope sum |alpha_k| and singular
/// exponent min gamma_k.
MatrixIntegrand matrix_integrand(const Type2Weight& w);

/// alpha_i > 0 and gamma_i > -1 for all i.
A2Report check_local_integrability(const Type2Weight& w);

/// Local integrability of both W and W^-1: alpha_i > 0 and -1 < gamma_i < 1.
/// Passing yields inconclusive_necessary_passed, never a2.
A2Report check_necessary_a2(const Type2Weight& w);

/// Exact decision for the rotation families: A2 iff all gamma_i are equal,
/// the common value lies in (-1, 1), and all alpha_i > 0.
/// Throws wrong_unitary_family for the identity family.
A2Report decide_rotation_a2(const Type2Weight& w);

/// Rotation families via decide_rotation_a2; the identity family is a
/// diagonal Type 1 weight and is decided by its necessary conditions.
A2Report decide_a2(const Type2Weight& w);

/// w_ii(x) = sum_k alpha_k |x|^gamma_k |u_ik(x)|^2 (0-based i).
ScalarIntegrand diagonal_entry(const Type2Weight& w, int i);

struct DivergenceRow {
  long n_index;
  double a;
  double b;
  double avg_w;
  double avg_winv;
  double product;
};

/// Averages of w_11 and 1/w_11 for the planar rotation weight with
/// eigen-exponents (gamma1, gamma2) over I_n = [2 pi n, 2 pi n + pi].
/// Requires -1 < gamma1 < gamma2 < 1 and strictly increasing positive n.
std::vector<DivergenceRow> divergence_experiment(const Rational& gamma1,
                                                 const Rational& gamma2,
                                                 std::span<const long> n_values,
                                                 double rel_tol = 1e-8);

/// I_n = [2 pi n, 2 pi n + pi].
Interval rotation_test_interval(long n);

/// Least-squares slope of log(product) against log(n).
double fit_loglog_slope(std::span<const DivergenceRow> rows);

/// `points` integers log-spaced over [n_min, n_max], rounded, deduplicated.
std::vector<long> log_spaced_indices(long n_min, long n_max, int points);

}  // namespace a2w
