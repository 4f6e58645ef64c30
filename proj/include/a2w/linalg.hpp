#pragma once

// Dense kernels for small (n <= 8) real or complex matrices.
//
// Everything here is templated on the scalar type and accepts any Eigen
// expression; complex<double> is the working type of the rest of the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a2w/error.hpp"

namespace a2w {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using cplx = std::complex<double>;
using DenseMatrix = Matrix<cplx>;

inline constexpr Eigen::Index kMaxDimension = 8;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr int kMaxJacobiSweeps = 50;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(who) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::invalid_argument,
                std::string(who) + ": matrix has non-finite entries");
  }
}

// ---------------------------------------------------------------------------
// Permutations

/// Sign of the permutation given by 0-based images, via cycle decomposition.
/// Throws invalid_argument if images is not a bijection on {0..n-1}.
inline int permutation_sign(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[v]) {
      throw Error(ErrorCode::invalid_argument, "not a permutation");
    }
    seen[v] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  int transpositions = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    int length = 0;
    for (int k = start; !seen[k]; k = images[k]) {
      seen[k] = 1;
      ++length;
    }
    transpositions += length - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

struct Permutation {
  std::vector<int> images;  // 0-based
  int sign = 1;

  static Permutation from_images(std::vector<int> images) {
    const int s = permutation_sign(images);
    return Permutation{std::move(images), s};
  }
};

// ---------------------------------------------------------------------------
// Determinants, cofactors, adjugate

/// Full permutation expansion, terms in lexicographic permutation order.
template <typename Derived>
typename Derived::Scalar leibniz_det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "leibniz_det: not square");
  }
  const Eigen::Index n = m.rows();
  if (n > kMaxDimension) {
    throw Error(ErrorCode::dimension_too_large,
                "leibniz_det: n = " + std::to_string(n) + " exceeds 8");
  }
  if (n == 0) return Scalar(1);
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar total(0);
  do {
    Scalar term(static_cast<double>(permutation_sign(sigma)));
    for (Eigen::Index k = 0; k < n; ++k) term *= m(k, sigma[k]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// Determinant through partially pivoted LU. Returns 0 for singular input.
template <typename Derived>
typename Derived::Scalar lu_det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "lu_det: not square");
  }
  if (m.rows() == 0) return Scalar(1);
  const Matrix<Scalar> dense = m;
  return dense.partialPivLu().determinant();
}

/// m with row i and column j removed (0-based).
template <typename Derived>
Matrix<typename Derived::Scalar> delete_row_col(
    const Eigen::MatrixBase<Derived>& m, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index n = m.rows();
  Matrix<typename Derived::Scalar> out(n - 1, m.cols() - 1);
  for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (Eigen::Index c = 0, cc = 0; c < m.cols(); ++c) {
      if (c == j) continue;
      out(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return out;
}

/// (-1)^(i+j) det(m without row i, column j); indices are 0-based.
template <typename Derived>
typename Derived::Scalar cofactor(const Eigen::MatrixBase<Derived>& m,
                                  Eigen::Index i, Eigen::Index j) {
  require_square(m, "cofactor");
  const Eigen::Index n = m.rows();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::index_out_of_range,
                "cofactor: index (" + std::to_string(i) + "," +
                    std::to_string(j) + ") out of range");
  }
  const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
  return leibniz_det(delete_row_col(m, i, j)) * sign;
}

/// Transposed cofactor matrix.
template <typename Derived>
Matrix<typename Derived::Scalar> adjugate(const Eigen::MatrixBase<Derived>& m) {
  require_square(m, "adjugate");
  const Eigen::Index n = m.rows();
  Matrix<typename Derived::Scalar> adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) adj(j, i) = cofactor(m, i, j);
  return adj;
}

/// adj(M) / det M. Fails when |det M| <= singular_rel_tol * max|m_ij|^n.
template <typename Derived>
Matrix<typename Derived::Scalar> adjugate_inverse(
    const Eigen::MatrixBase<Derived>& m, double singular_rel_tol = 1e-12) {
  require_square(m, "adjugate_inverse");
  const auto det = leibniz_det(m);
  const double scale = std::pow(max_abs(m), static_cast<double>(m.rows()));
  if (!(std::abs(det) > singular_rel_tol * scale)) {
    throw Error(ErrorCode::singular_matrix,
                "adjugate_inverse: matrix is singular to working tolerance");
  }
  return adjugate(m) / det;
}

// ---------------------------------------------------------------------------
// Self-adjoint matrices

template <typename Scalar>
class SelfAdjoint {
 public:
  using MatrixType = Matrix<Scalar>;

  SelfAdjoint() = default;

  /// Validates ||m - m*||_max <= tol * ||m||_max, then stores (m + m*) / 2.
  static SelfAdjoint from(const MatrixType& m,
                          double hermitian_tol = kHermitianTol) {
    require_square(m, "SelfAdjoint");
    if (hermitian_defect(m) > hermitian_tol * max_abs(m)) {
      throw Error(ErrorCode::not_self_adjoint,
                  "matrix is not self-adjoint within tolerance");
    }
    return symmetrize(m);
  }

  /// Stores (m + m*) / 2 without checking.
  static SelfAdjoint symmetrize(const MatrixType& m) {
    SelfAdjoint h;
    h.m_ = (m + m.adjoint()) / Scalar(2);
    for (Eigen::Index k = 0; k < h.m_.rows(); ++k)
      h.m_(k, k) = Scalar(Eigen::numext::real(h.m_(k, k)));
    return h;
  }

  static double hermitian_defect(const MatrixType& m) {
    return max_abs(m - m.adjoint());
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  MatrixType m_;
};

template <typename Scalar>
struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  Matrix<Scalar> vectors;  // orthonormal columns
};

/// Cyclic Jacobi with row-by-row sweep order.
template <typename Scalar>
EigenDecomposition<Scalar> sym_eigen(const SelfAdjoint<Scalar>& h,
                                     int max_sweeps = kMaxJacobiSweeps) {
  using Eigen::numext::conj;
  using Eigen::numext::real;
  Matrix<Scalar> a = h.matrix();
  const Eigen::Index n = a.rows();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  const double scale = a.norm();
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Scalar phase = apq / mag;
        const double app = real(a(p, p));
        const double aqq = real(a(q, q));
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
        const Scalar gqp = -s * conj(phase);
        const Scalar gqq = c * conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * s + akq * gqq;
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * s + vkq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk + conj(gqp) * aqk;
          a(q, k) = s * apk + conj(gqq) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(real(a(p, p)));
        a(q, q) = Scalar(real(a(q, q)));
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) > 1e-13 * scale) {
      throw Error(ErrorCode::no_convergence,
                  "sym_eigen: Jacobi iteration did not converge");
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return real(a(i, i)) < real(a(j, j));
  });
  EigenDecomposition<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = real(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Principal square root V diag(sqrt(lambda)) V* of a positive semidefinite
/// matrix; eigenvalues down to -clamp_tol * ||H|| are clamped to zero.
template <typename Scalar>
SelfAdjoint<Scalar> sqrt_psd(const SelfAdjoint<Scalar>& h,
                             double clamp_tol = 1e-12) {
  const auto eig = sym_eigen(h);
  const double norm = eig.values.cwiseAbs().maxCoeff();
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda < -clamp_tol * norm) {
      throw Error(ErrorCode::negative_eigenvalue,
                  "sqrt_psd: matrix has a negative eigenvalue");
    }
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  const Matrix<Scalar> root =
      eig.vectors * roots.cast<Scalar>().asDiagonal() * eig.vectors.adjoint();
  return SelfAdjoint<Scalar>::symmetrize(root);
}

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return 0.0;
  const Matrix<Scalar> gram = m.adjoint() * m;
  const auto eig = sym_eigen(SelfAdjoint<Scalar>::symmetrize(gram));
  return std::sqrt(std::max(eig.values(eig.values.size() - 1), 0.0));
}

// ---------------------------------------------------------------------------
// Positive definiteness

enum class Positivity { positive, not_positive, marginal };

inline const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::not_positive: return "not_positive";
    case Positivity::marginal: return "marginal";
  }
  return "?";
}

struct PositivityCheck {
  Positivity verdict = Positivity::marginal;
  std::vector<double> leading_minors;  // sizes 1..n
  double min_eigenvalue = 0.0;
  std::optional<int> failed_minor;  // 1-based size of first non-passing minor
};

/// Sylvester's criterion (leading minors via LU) cross-checked against the
/// smallest Jacobi eigenvalue. Each test is pass / fail / marginal with
/// margin tol * ||H|| (tol * ||H||^k for the k-th minor); the verdict is
/// positive or not_positive only if both tests agree outright.
template <typename Scalar>
PositivityCheck is_positive_definite(const SelfAdjoint<Scalar>& h,
                                     double tol = 1e-12) {
  using Eigen::numext::real;
  const Eigen::Index n = h.dim();
  const double norm = max_abs(h.matrix());
  PositivityCheck out;

  enum class State { pass, fail, marginal };
  State minor_state = State::pass;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const double minor = real(lu_det(h.matrix().topLeftCorner(k, k)));
    out.leading_minors.push_back(minor);
    const double margin = tol * std::pow(norm, static_cast<double>(k));
    if (minor > margin) continue;
    if (!out.failed_minor) out.failed_minor = static_cast<int>(k);
    if (minor < -margin) {
      minor_state = State::fail;
    } else if (minor_state == State::pass) {
      minor_state = State::marginal;
    }
  }

  out.min_eigenvalue = sym_eigen(h).values(0);
  State eig_state = State::marginal;
  if (out.min_eigenvalue > tol * norm) {
    eig_state = State::pass;
  } else if (out.min_eigenvalue < -tol * norm) {
    eig_state = State::fail;
  }

  if (minor_state == State::pass && eig_state == State::pass) {
    out.verdict = Positivity::positive;
  } else if (minor_state == State::fail && eig_state == State::fail) {
    out.verdict = Positivity::not_positive;
  } else {
    out.verdict = Positivity::marginal;
  }
  return out;
}

}  // namespace a2w
