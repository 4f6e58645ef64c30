#pragma once

// Multivariable power weights on R^d, d in {2, 3}, averaged over cubes.
//   Type 1.a: W(x)_ij = a_ij prod_c |x_c|^(e_c)_ij
//   Type 1.b: W(x)_ij = a_ij ||x||^gamma_ij

#include <functional>
#include <span>
#include <vector>

#include "a2w/domain.hpp"
#include "a2w/estimator.hpp"
#include "a2w/report.hpp"
#include "a2w/search.hpp"
#include "a2w/type1.hpp"

namespace a2w {

inline constexpr int kDefaultCellBudget = 50000;

class Type1aWeight {
 public:
  /// One n x n exponent matrix per coordinate; 2 <= d <= 3, 1 <= n <= 8.
  Type1aWeight(DenseMatrix coeff, std::vector<ExponentMatrix> exponents);

  int dim() const noexcept { return static_cast<int>(coeff_.rows()); }
  int ambient_dim() const noexcept { return static_cast<int>(exponents_.size()); }
  const DenseMatrix& coeff() const noexcept { return coeff_; }
  const std::vector<ExponentMatrix>& exponents() const noexcept {
    return exponents_;
  }

 private:
  DenseMatrix coeff_;
  std::vector<ExponentMatrix> exponents_;
};

class Type1bWeight {
 public:
  /// 2 <= d <= 3, 1 <= n <= 8.
  Type1bWeight(DenseMatrix coeff, ExponentMatrix exponents, int d);

  int dim() const noexcept { return static_cast<int>(coeff_.rows()); }
  int ambient_dim() const noexcept { return d_; }
  const DenseMatrix& coeff() const noexcept { return coeff_; }
  const ExponentMatrix& exponents() const noexcept { return exponents_; }

 private:
  DenseMatrix coeff_;
  ExponentMatrix exponents_;
  int d_;
};

/// Off-diagonal exponents filled by the midpoint rule, per coordinate.
Type1aWeight build_type1a(const DenseMatrix& coeff,
                          const std::vector<std::vector<Rational>>& diagonals);
Type1bWeight build_type1b(const DenseMatrix& coeff,
                          std::span<const Rational> diagonal, int d);

/// a2 iff the coefficients are positive definite and, for each coordinate,
/// the midpoint condition holds exactly with diagonal exponents in (-1, 1).
A2Report check_a2_type1a(const Type1aWeight& w);

/// a2 iff the coefficients are positive definite, the midpoint condition
/// holds exactly, and -d < gamma_ii < d.
A2Report check_a2_type1b(const Type1bWeight& w);

DenseMatrix evaluate(const Type1aWeight& w, std::span<const double> x);
DenseMatrix evaluate(const Type1bWeight& w, std::span<const double> x);

/// det W(x) = det A prod_c |x_c|^(tr e_c): the coefficient and one exponent
/// per coordinate. Requires the midpoint condition in every coordinate.
struct MultiPowerTerm {
  cplx coefficient;
  std::vector<Rational> exponents;
};
MultiPowerTerm symbolic_det(const Type1aWeight& w);

/// det W(x) = det A ||x||^(sum gamma_kk). Requires the midpoint condition.
PowerTerm symbolic_det(const Type1bWeight& w);

/// W^-1: coefficients A^-1, exponents negated. Requires positive definite
/// coefficients and the midpoint condition.
Type1aWeight inverse(const Type1aWeight& w);
Type1bWeight inverse(const Type1bWeight& w);

/// Entrywise a_ij prod_c <|x_c|^e>_{edge c} from the 1D closed forms.
Hermitian average_type1a(const Type1aWeight& w, const Cube& q);

/// Adaptive cell-subdivision quadrature of a_ij ||x||^gamma_ij over q. Cells
/// are first split at the coordinate hyperplanes through 0, so the origin is
/// only ever a cell corner. Origin-free cells use tensor Gauss-Legendre rules
/// of order 8 and 7 (difference as the error estimate); cells at the origin
/// additionally carry the bound S_(d-1) R^(gamma+d) / ((gamma+d) 2^d) with R
/// the cell diagonal. The worst cell is split into 2^d children until the
/// per-entry error is <= tol (1 + |average|).
///
/// Throws non_integrable if q contains 0 and some gamma_ij <= -d,
/// tolerance_not_met past max_cells.
Hermitian average_type1b(const Type1bWeight& w, const Cube& q, double tol,
                         int max_cells = kDefaultCellBudget);

enum class CubeFamily { all, origin_cornered };

struct CubeSearchResult {
  double estimate;
  Cube argmax;
  std::size_t evaluations;
  Functional functional;
};

/// Sup search over cubes with lower corner (c - h)(1, ..., 1) and side 2h for
/// (c, h) from the config grids, plus the origin-cornered cubes [0, 2h]^d.
/// With CubeFamily::origin_cornered only the latter are searched.
/// Requires the matching check to return a2.
CubeSearchResult estimate_a2_cubes(const Type1aWeight& w, Functional f,
                                   const SupSearchConfig& cfg,
                                   CubeFamily family = CubeFamily::all);
/// Quadrature uses cfg.quadrature_tol.
CubeSearchResult estimate_a2_cubes(const Type1bWeight& w, Functional f,
                                   const SupSearchConfig& cfg,
                                   CubeFamily family = CubeFamily::all);

/// Cube for a search point of the given family and dimension.
Cube search_cube(const SearchPoint& p, int d, CubeFamily family);

}  // namespace a2w
