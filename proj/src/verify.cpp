#include "a2w/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "a2w/multivar.hpp"
#include "a2w/quadrature.hpp"
#include "a2w/random_weights.hpp"
#include "a2w/type1.hpp"
#include "a2w/type2.hpp"

namespace a2w {
namespace {

using Trial = std::function<std::optional<std::string>(Rng&)>;

struct Property {
  std::string module;
  std::string name;
  Trial trial;
};

double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

double rel_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return max_abs(a - b) / std::max(max_abs(b), 1e-300);
}

std::string fmt(const char* what, double value, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << what << " deviation " << value << " > " << tol;
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int random_dim(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

DenseMatrix random_matrix(Rng& rng, int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  return m;
}

std::vector<Property> linalg_properties(bool fault) {
  std::vector<Property> out;
  out.push_back({"linalg", "leibniz_det_matches_lu", [fault](Rng& rng) -> std::optional<std::string> {
    const DenseMatrix m = random_matrix(rng, random_dim(rng, 1, 6));
    cplx ld = leibniz_det(m);
    if (fault) ld *= 1.0 + 1e-6;
    const double d = rel_diff(ld, lu_det(m));
    if (d > 1e-10) return fmt("det", d, 1e-10);
    return std::nullopt;
  }});
  out.push_back({"linalg", "adjugate_inverse_matches_elimination", [](Rng& rng) -> std::optional<std::string> {
    const int n = random_dim(rng, 1, 6);
    const DenseMatrix m = random_matrix(rng, n) + 2.0 * DenseMatrix::Identity(n, n);
    const double d = rel_diff(adjugate_inverse(m), DenseMatrix(m.inverse()));
    if (d > 1e-9) return fmt("inverse", d, 1e-9);
    return std::nullopt;
  }});
  out.push_back({"linalg", "permutation_sign_matches_inversions", [](Rng& rng) -> std::optional<std::string> {
    const int n = random_dim(rng, 1, 8);
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    if (permutation_sign(p) != (inversions % 2 ? -1 : 1)) return "sign mismatch";
    return std::nullopt;
  }});
  out.push_back({"linalg", "jacobi_matches_reference_eigensolver", [](Rng& rng) -> std::optional<std::string> {
    const int n = random_dim(rng, 1, 8);
    const auto h = SelfAdjoint<cplx>::symmetrize(random_matrix(rng, n));
    const auto eig = sym_eigen(h);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> ref(h.matrix());
    const double scale = std::max(1.0, ref.eigenvalues().cwiseAbs().maxCoeff());
    const double dv = (eig.values - ref.eigenvalues()).cwiseAbs().maxCoeff() / scale;
    if (dv > 1e-12) return fmt("eigenvalue", dv, 1e-12);
    const DenseMatrix rec =
        eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    const double dr = max_abs(rec - h.matrix()) / scale;
    if (dr > 1e-12) return fmt("reconstruction", dr, 1e-12);
    const double du =
        max_abs(eig.vectors.adjoint() * eig.vectors - DenseMatrix::Identity(n, n));
    if (du > 1e-12) return fmt("orthonormality", du, 1e-12);
    return std::nullopt;
  }});
  out.push_back({"linalg", "sqrt_psd_squares_back", [](Rng& rng) -> std::optional<std::string> {
    const int n = random_dim(rng, 1, 6);
    const auto h = SelfAdjoint<cplx>::symmetrize(random_hpd(rng, n, true));
    const DenseMatrix r = sqrt_psd(h).matrix();
    const double d = rel_diff(r * r, h.matrix());
    if (d > 1e-12) return fmt("square", d, 1e-12);
    return std::nullopt;
  }});
  return out;
}

std::vector<Property> type1_properties() {
  std::vector<Property> out;
  out.push_back({"type1", "symbolic_det_matches_lu", [](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type1_a2(rng, random_dim(rng, 2, 4));
    const PowerTerm det = symbolic_det(w);
    for (int k = 0; k < 40; ++k) {
      const double x = random_point(rng);
      const cplx sym = det.coefficient * std::pow(std::abs(x), det.exponent.to_double());
      const double d = rel_diff(sym, lu_det(evaluate(w, x)));
      if (d > 1e-9) return fmt("det", d, 1e-9) + " at x=" + std::to_string(x);
    }
    return std::nullopt;
  }});
  out.push_back({"type1", "symbolic_minor_det_matches_lu", [](Rng& rng) -> std::optional<std::string> {
    const int n = random_dim(rng, 2, 4);
    const auto w = random_type1_a2(rng, n);
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const PowerTerm minor = symbolic_minor_det(w, i, j);
    for (int k = 0; k < 40; ++k) {
      const double x = random_point(rng);
      const cplx sym = minor.coefficient * std::pow(std::abs(x), minor.exponent.to_double());
      const double d = rel_diff(sym, lu_det(delete_row_col(evaluate(w, x), i, j)));
      if (d > 1e-9) return fmt("minor det", d, 1e-9) + " at x=" + std::to_string(x);
    }
    return std::nullopt;
  }});
  out.push_back({"type1", "symbolic_inverse_matches_elimination", [](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type1_a2(rng, random_dim(rng, 2, 4));
    const auto winv = symbolic_inverse(w);
    for (int k = 0; k < 40; ++k) {
      const double x = random_point(rng);
      const double d = rel_diff(evaluate(winv, x), DenseMatrix(evaluate(w, x).inverse()));
      if (d > 1e-8) return fmt("inverse", d, 1e-8) + " at x=" + std::to_string(x);
    }
    return std::nullopt;
  }});
  out.push_back({"type1", "a2_weights_positive_pointwise", [](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type1_a2(rng, random_dim(rng, 2, 4));
    if (check_a2(w).verdict != Verdict::a2) return "generated weight not classified a2";
    for (int k = 0; k < 40; ++k) {
      const double x = random_point(rng);
      const auto eig = sym_eigen(SelfAdjoint<cplx>::symmetrize(evaluate(w, x)));
      if (!(eig.values(0) > 0.0)) return "non-positive eigenvalue at x=" + std::to_string(x);
    }
    return std::nullopt;
  }});
  return out;
}

std::vector<Property> type2_properties() {
  std::vector<Property> out;
  const UnitaryFamily families[] = {UnitaryFamily::rotation2d,
                                    UnitaryFamily::rotation3d_euler};
  out.push_back({"type2", "trace_identity", [families](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type2(rng, families[rng() % 2]);
    const double x = random_point(rng);
    double expect = 0.0;
    for (int k = 0; k < w.dim(); ++k)
      expect += w.alphas()[k] * std::pow(std::abs(x), w.gammas()[k].to_double());
    const double tr = evaluate_type2(w, x).matrix().trace().real();
    const double d = std::abs(tr - expect) / expect;
    if (d > 1e-10) return fmt("trace", d, 1e-10);
    return std::nullopt;
  }});
  out.push_back({"type2", "unitarity", [](Rng& rng) -> std::optional<std::string> {
    const double x = uniform(rng, -100.0, 100.0);
    for (auto [family, n] : {std::pair{UnitaryFamily::rotation2d, 2},
                             std::pair{UnitaryFamily::rotation3d_euler, 3}}) {
      const Eigen::MatrixXd u = unitary_matrix(family, n, x);
      const double d = (u.transpose() * u - Eigen::MatrixXd::Identity(n, n))
                           .cwiseAbs().maxCoeff();
      if (d > 1e-12) return fmt("unitarity", d, 1e-12);
    }
    return std::nullopt;
  }});
  out.push_back({"type2", "eigenvalue_multiset", [families](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type2(rng, families[rng() % 2]);
    const double x = random_point(rng);
    std::vector<double> expect;
    for (int k = 0; k < w.dim(); ++k)
      expect.push_back(w.alphas()[k] * std::pow(std::abs(x), w.gammas()[k].to_double()));
    std::sort(expect.begin(), expect.end());
    const auto eig = sym_eigen(evaluate_type2(w, x));
    for (int k = 0; k < w.dim(); ++k) {
      const double d = std::abs(eig.values(k) - expect[k]) / expect.back();
      if (d > 1e-9) return fmt("eigenvalue", d, 1e-9);
    }
    return std::nullopt;
  }});
  return out;
}

std::vector<Property> multivar_properties() {
  std::vector<Property> out;
  out.push_back({"multivar", "type1a_symbolic_det_matches_lu", [](Rng& rng) -> std::optional<std::string> {
    const int d = random_dim(rng, 2, 3);
    const auto w = random_type1a(rng, random_dim(rng, 2, 4), d);
    const MultiPowerTerm det = symbolic_det(w);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = random_point(rng);
    cplx sym = det.coefficient;
    for (int c = 0; c < d; ++c) sym *= std::pow(std::abs(x[c]), det.exponents[c].to_double());
    const double diff = rel_diff(sym, lu_det(evaluate(w, x)));
    if (diff > 1e-9) return fmt("det", diff, 1e-9);
    return std::nullopt;
  }});
  out.push_back({"multivar", "type1b_inverse_matches_elimination", [](Rng& rng) -> std::optional<std::string> {
    const int d = random_dim(rng, 2, 3);
    const auto w = random_type1b(rng, random_dim(rng, 2, 4), d);
    const auto winv = inverse(w);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = random_point(rng);
    const double diff = rel_diff(evaluate(winv, x), DenseMatrix(evaluate(w, x).inverse()));
    if (diff > 1e-8) return fmt("inverse", diff, 1e-8);
    return std::nullopt;
  }});
  out.push_back({"multivar", "type1a_average_matches_tensor_quadrature", [](Rng& rng) -> std::optional<std::string> {
    const auto w = random_type1a(rng, 2, 2);
    std::vector<double> lower{uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
    const Cube q(lower, uniform(rng, 0.1, 1.0));
    const GaussRule& rule = gauss_legendre(20);
    DenseMatrix sum = DenseMatrix::Zero(2, 2);
    const double half = 0.5 * q.side();
    for (std::size_t a = 0; a < rule.nodes.size(); ++a)
      for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
        const std::vector<double> x{lower[0] + half * (1.0 + rule.nodes[a]),
                                    lower[1] + half * (1.0 + rule.nodes[b])};
        sum += rule.weights[a] * rule.weights[b] * evaluate(w, x);
      }
    sum /= 4.0;
    const double diff = rel_diff(average_type1a(w, q).matrix(), sum);
    if (diff > 1e-10) return fmt("average", diff, 1e-10);
    return std::nullopt;
  }});
  return out;
}

}  // namespace

std::vector<PropertyResult> run_verify(const VerifyOptions& options) {
  if (options.trials < 1) {
    throw Error(ErrorCode::invalid_argument, "trials must be positive");
  }
  const std::string& m = options.module;
  if (m != "all" && m != "linalg" && m != "type1" && m != "type2" &&
      m != "multivar") {
    throw Error(ErrorCode::invalid_argument, "unknown module '" + m + "'");
  }
  std::vector<Property> props;
  auto add = [&](std::vector<Property> more) {
    for (auto& p : more) props.push_back(std::move(p));
  };
  if (m == "all" || m == "linalg") add(linalg_properties(options.inject_fault));
  if (m == "all" || m == "type1") add(type1_properties());
  if (m == "all" || m == "type2") add(type2_properties());
  if (m == "all" || m == "multivar") add(multivar_properties());

  std::vector<PropertyResult> results;
  for (std::size_t p = 0; p < props.size(); ++p) {
    PropertyResult r{props[p].module, props[p].name, true, 0, {}};
    for (int t = 0; t < options.trials; ++t) {
      Rng rng = make_rng(options.seed, fnv1a(props[p].name),
                         static_cast<std::uint64_t>(t));
      ++r.trials;
      std::optional<std::string> failure;
      try {
        failure = props[p].trial(rng);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      if (failure) {
        r.passed = false;
        r.detail = "trial " + std::to_string(t) + " (seed " +
                   std::to_string(options.seed) + "): " + *failure;
        break;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace a2w
