#pragma once

// Type 1 matrix power functions: W(x)_ij = s * a_ij * |x|^gamma_ij.

#include <span>
#include <vector>

#include "a2w/linalg.hpp"
#include "a2w/rational.hpp"
#include "a2w/report.hpp"

namespace a2w {

/// Square matrix of exact rational exponents.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  explicit ExponentMatrix(int n, Rational fill = Rational(0));

  /// Fills off-diagonal entries by the midpoint rule (g_ii + g_jj) / 2.
  static ExponentMatrix from_diagonal(std::span<const Rational> diagonal);

  int dim() const noexcept { return n_; }
  Rational& operator()(int i, int j) { return data_[index(i, j)]; }
  const Rational& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::vector<Rational> diagonal() const;
  Rational trace() const;
  bool satisfies_midpoint() const;
  ExponentMatrix operator-() const;

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<Rational> data_;
};

class SymbolicPowerMatrix {
 public:
  /// Throws dimension_mismatch unless coeff and exponents are both n x n with
  /// 1 <= n <= 8; global_scale must be positive.
  SymbolicPowerMatrix(DenseMatrix coeff, ExponentMatrix exponents,
                      double global_scale = 1.0);

  int dim() const noexcept { return exponents_.dim(); }
  const DenseMatrix& coeff() const noexcept { return coeff_; }
  const ExponentMatrix& exponents() const noexcept { return exponents_; }
  double global_scale() const noexcept { return global_scale_; }

  /// global_scale * coeff.
  DenseMatrix effective_coeff() const { return coeff_ * global_scale_; }

  /// c W for c > 0 (multiplies the coefficient matrix).
  SymbolicPowerMatrix scaled(double c) const;

  /// Exponents with zero-coefficient entries moved to their midpoint value,
  /// which makes the midpoint test total.
  ExponentMatrix normalized_exponents() const;

 private:
  DenseMatrix coeff_;
  ExponentMatrix exponents_;
  double global_scale_;
};

SymbolicPowerMatrix build_type1(const DenseMatrix& coeff,
                                std::span<const Rational> diag_exponents);
SymbolicPowerMatrix build_type1_raw(const DenseMatrix& coeff,
                                    const ExponentMatrix& exponents);

/// W(x) for x != 0.
DenseMatrix evaluate(const SymbolicPowerMatrix& w, double x);

/// x values probed for a negative-eigenvalue witness: +-logspace(1e-8, 1e8, 65).
const std::vector<double>& witness_grid();

/// Self-adjointness (relative tolerance kHermitianTol) and positivity of a
/// coefficient matrix, appended to `report`. Returns the positivity verdict
/// (not_positive when the matrix is not self-adjoint).
Positivity append_coefficient_findings(const DenseMatrix& coeff,
                                       A2Report& report);

/// Exact midpoint condition on `exponents`, skipping entries whose
/// coefficient is zero. Returns true when it holds.
bool append_midpoint_findings(const ExponentMatrix& exponents,
                              const DenseMatrix& coeff, int coordinate,
                              A2Report& report);

/// Positive definite a.e.: self-adjoint positive definite coefficients plus
/// the exact midpoint condition. On a failure of either of the latter, scans
/// witness_grid() for an x where W(x) has a negative eigenvalue.
A2Report check_positive_definite_ae(const SymbolicPowerMatrix& w);

/// check_positive_definite_ae plus -1 < gamma_ii < 1 for every i.
A2Report check_a2(const SymbolicPowerMatrix& w);

/// coefficient * |x|^exponent.
struct PowerTerm {
  cplx coefficient;
  Rational exponent;
};

/// det W(x) = s^n det A |x|^(sum gamma_kk). Requires the midpoint condition.
PowerTerm symbolic_det(const SymbolicPowerMatrix& w);

/// Determinant of W(x) with row i and column j removed (0-based):
/// s^(n-1) det A_ij |x|^(-gamma_ij + sum gamma_kk).
PowerTerm symbolic_minor_det(const SymbolicPowerMatrix& w, int i, int j);

/// W^-1 as a power matrix: coefficient (i,j) = (-1)^(i+j) det A_ji, exponent
/// (i,j) = -gamma_ij, global scale 1 / (s det A).
SymbolicPowerMatrix symbolic_inverse(const SymbolicPowerMatrix& w);

/// Interval-uniform bound on Tr(<W>_I <W^-1>_I):
///   max_ij |a_ij det A_ij| / |det A| * sum_ij [|x|^gamma_ij]_A2
/// with the scalar constants from power_a2_constant(). Throws not_a2.
double a2_upper_bound(const SymbolicPowerMatrix& w);

}  // namespace a2w
