#include "a2w/type2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "a2w/parallel.hpp"
#include "a2w/scalar_power.hpp"

namespace a2w {

std::string_view to_string(UnitaryFamily u) {
  switch (u) {
    case UnitaryFamily::identity: return "identity";
    case UnitaryFamily::rotation2d: return "rotation2d";
    case UnitaryFamily::rotation3d_euler: return "rotation3d_euler";
  }
  return "?";
}

UnitaryFamily parse_unitary_family(std::string_view name) {
  if (name == "identity") return UnitaryFamily::identity;
  if (name == "rotation2d") return UnitaryFamily::rotation2d;
  if (name == "rotation3d_euler") return UnitaryFamily::rotation3d_euler;
  throw Error(ErrorCode::parse_error,
              "unknown unitary family '" + std::string(name) + "'");
}

Eigen::Matrix3d rotation_x(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Eigen::Matrix3d r;
  r << 1, 0, 0,
       0, c, s,
       0, -s, c;
  return r;
}

Eigen::Matrix3d rotation_y(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Eigen::Matrix3d r;
  r << c, 0, -s,
       0, 1, 0,
       s, 0, c;
  return r;
}

Eigen::Matrix3d rotation_z(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Eigen::Matrix3d r;
  r << c, s, 0,
       -s, c, 0,
       0, 0, 1;
  return r;
}

Eigen::MatrixXd unitary_matrix(UnitaryFamily family, int n, double x) {
  switch (family) {
    case UnitaryFamily::identity:
      return Eigen::MatrixXd::Identity(n, n);
    case UnitaryFamily::rotation2d: {
      const double c = std::cos(x), s = std::sin(x);
      Eigen::MatrixXd u(2, 2);
      u << c, -s,
           s, c;
      return u;
    }
    case UnitaryFamily::rotation3d_euler:
      return rotation_x(x) * rotation_y(x) * rotation_z(x);
  }
  throw Error(ErrorCode::invalid_argument, "unknown unitary family");
}

Type2Weight::Type2Weight(std::vector<double> alphas,
                         std::vector<Rational> gammas, UnitaryFamily unitary)
    : alphas_(std::move(alphas)), gammas_(std::move(gammas)), unitary_(unitary) {
  const auto n = alphas_.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxDimension) ||
      gammas_.size() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "Type 2 weight needs 1 <= n <= 8 alphas and as many gammas");
  }
  if ((unitary_ == UnitaryFamily::rotation2d && n != 2) ||
      (unitary_ == UnitaryFamily::rotation3d_euler && n != 3)) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(to_string(unitary_)) +
                    " does not match dimension " + std::to_string(n));
  }
  for (double a : alphas_) {
    if (!std::isfinite(a)) {
      throw Error(ErrorCode::invalid_argument, "non-finite alpha");
    }
  }
}

Type2Weight Type2Weight::inverse() const {
  std::vector<double> alphas;
  std::vector<Rational> gammas;
  for (int k = 0; k < dim(); ++k) {
    if (alphas_[k] == 0.0) {
      throw Error(ErrorCode::singular_matrix, "alpha = 0 has no inverse");
    }
    alphas.push_back(1.0 / alphas_[k]);
    gammas.push_back(-gammas_[k]);
  }
  return Type2Weight(std::move(alphas), std::move(gammas), unitary_);
}

double Type2Weight::min_exponent() const {
  double g = gammas_.front().to_double();
  for (const auto& r : gammas_) g = std::min(g, r.to_double());
  return g;
}

namespace {

Eigen::VectorXd eigenvalues_at(const Type2Weight& w, double x) {
  const double ax = std::abs(x);
  Eigen::VectorXd d(w.dim());
  for (int k = 0; k < w.dim(); ++k) {
    const Rational& g = w.gammas()[k];
    if (ax == 0.0 && g < Rational(0)) {
      throw Error(ErrorCode::evaluation_at_origin,
                  "Type 2 weight evaluated at x = 0 with a negative exponent");
    }
    d(k) = w.alphas()[k] * std::pow(ax, g.to_double());
  }
  return d;
}

double envelope(const Type2Weight& w) {
  double e = 0.0;
  for (double a : w.alphas()) e += std::abs(a);
  return e;
}

}  // namespace

SelfAdjoint<cplx> evaluate_type2(const Type2Weight& w, double x) {
  const Eigen::VectorXd d = eigenvalues_at(w, x);
  const Eigen::MatrixXd u = unitary_matrix(w.unitary(), w.dim(), x);
  const Eigen::MatrixXd m = u * d.asDiagonal() * u.transpose();
  return SelfAdjoint<cplx>::symmetrize(m.cast<cplx>());
}

MatrixIntegrand matrix_integrand(const Type2Weight& w) {
  return MatrixIntegrand{
      w.dim(),
      [w](double x) { return evaluate_type2(w, x).matrix(); },
      w.min_exponent(), envelope(w)};
}

A2Report check_local_integrability(const Type2Weight& w) {
  A2Report report;
  for (int k = 0; k < w.dim(); ++k) {
    if (!(w.alphas()[k] > 0.0)) {
      report.reasons.push_back({FindingKind::non_positive_alpha,
                                {k + 1},
                                0,
                                "alpha " + std::to_string(w.alphas()[k]) +
                                    " is not positive"});
    }
    if (w.gammas()[k] <= Rational(-1)) {
      report.reasons.push_back({FindingKind::exponent_not_integrable,
                                {k + 1},
                                0,
                                "exponent " + w.gammas()[k].to_string() +
                                    " is not greater than -1"});
    }
  }
  report.verdict = report.reasons.empty() ? Verdict::locally_integrable
                                          : Verdict::not_locally_integrable;
  return report;
}

A2Report check_necessary_a2(const Type2Weight& w) {
  A2Report report;
  for (int k = 0; k < w.dim(); ++k) {
    if (!(w.alphas()[k] > 0.0)) {
      report.reasons.push_back({FindingKind::non_positive_alpha,
                                {k + 1},
                                0,
                                "alpha " + std::to_string(w.alphas()[k]) +
                                    " is not positive"});
    }
    if (!scalar_is_a2(w.gammas()[k])) {
      report.reasons.push_back(
          {FindingKind::exponent_out_of_range,
           {k + 1},
           0,
           "exponent " + w.gammas()[k].to_string() +
               " is outside (-1, 1); W or W^-1 is not locally integrable"});
    }
  }
  report.verdict = report.reasons.empty()
                       ? Verdict::inconclusive_necessary_passed
                       : Verdict::not_a2;
  return report;
}

A2Report decide_rotation_a2(const Type2Weight& w) {
  if (w.unitary() == UnitaryFamily::identity) {
    throw Error(ErrorCode::wrong_unitary_family,
                "rotation decision needs a rotation unitary family");
  }
  A2Report report;
  for (int k = 0; k < w.dim(); ++k) {
    if (!(w.alphas()[k] > 0.0)) {
      report.reasons.push_back({FindingKind::non_positive_alpha,
                                {k + 1},
                                0,
                                "alpha " + std::to_string(w.alphas()[k]) +
                                    " is not positive"});
    }
  }
  const Rational& g0 = w.gammas().front();
  for (int k = 1; k < w.dim(); ++k) {
    if (w.gammas()[k] != g0) {
      report.reasons.push_back(
          {FindingKind::unequal_exponents,
           {1, k + 1},
           0,
           "rotation criterion: exponents unequal (" + g0.to_string() +
               " vs " + w.gammas()[k].to_string() + ")"});
    }
  }
  if (!scalar_is_a2(g0)) {
    report.reasons.push_back({FindingKind::exponent_out_of_range,
                              {1},
                              0,
                              "common exponent " + g0.to_string() +
                                  " is outside (-1, 1)"});
  }
  report.verdict = report.reasons.empty() ? Verdict::a2 : Verdict::not_a2;
  if (report.verdict == Verdict::a2) {
    bool equal_alphas = true;
    for (double a : w.alphas()) equal_alphas &= a == w.alphas().front();
    if (!equal_alphas) {
      report.reasons.push_back(
          {FindingKind::note,
           {},
           0,
           "unequal alphas: accepted because min(alpha)|x|^g I <= W(x) <= "
           "max(alpha)|x|^g I (implementation-derived extension of the "
           "equal-alpha rule)"});
    }
  }
  return report;
}

A2Report decide_a2(const Type2Weight& w) {
  if (w.unitary() != UnitaryFamily::identity) return decide_rotation_a2(w);
  A2Report report = check_necessary_a2(w);
  if (report.verdict == Verdict::inconclusive_necessary_passed) {
    report.verdict = Verdict::a2;
  }
  return report;
}

ScalarIntegrand diagonal_entry(const Type2Weight& w, int i) {
  if (i < 0 || i >= w.dim()) {
    throw Error(ErrorCode::index_out_of_range,
                "diagonal entry index " + std::to_string(i) + " out of range");
  }
  return ScalarIntegrand{
      [w, i](double x) {
        const Eigen::VectorXd d = eigenvalues_at(w, x);
        const Eigen::MatrixXd u = unitary_matrix(w.unitary(), w.dim(), x);
        double sum = 0.0;
        for (int k = 0; k < w.dim(); ++k) sum += d(k) * u(i, k) * u(i, k);
        return sum;
      },
      w.min_exponent(), envelope(w)};
}

Interval rotation_test_interval(long n) {
  const double start = 2.0 * std::numbers::pi * static_cast<double>(n);
  return Interval(start, start + std::numbers::pi);
}

std::vector<DivergenceRow> divergence_experiment(const Rational& gamma1,
                                                 const Rational& gamma2,
                                                 std::span<const long> n_values,
                                                 double rel_tol) {
  if (!(Rational(-1) < gamma1 && gamma1 < gamma2 && gamma2 < Rational(1))) {
    throw Error(ErrorCode::invalid_argument,
                "divergence experiment needs -1 < gamma1 < gamma2 < 1");
  }
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] < 1 || (k > 0 && n_values[k] <= n_values[k - 1])) {
      throw Error(ErrorCode::invalid_argument,
                  "n values must be positive and strictly increasing");
    }
  }
  const Type2Weight w({1.0, 1.0}, {gamma1, gamma2}, UnitaryFamily::rotation2d);
  const ScalarIntegrand w11 = diagonal_entry(w, 0);
  const ScalarIntegrand inv{[&w11](double x) { return 1.0 / w11.eval(x); },
                            0.0, 1.0};
  const QuadratureOptions opt{0.0, rel_tol, kDefaultPanelBudget};

  return parallel_map<DivergenceRow>(n_values.size(), [&](std::size_t k) {
    const Interval I = rotation_test_interval(n_values[k]);
    const double avg_w = integrate(w11, I, opt) / I.length();
    const double avg_winv = integrate(inv, I, opt) / I.length();
    return DivergenceRow{n_values[k], I.a(),  I.b(),
                         avg_w,       avg_winv, avg_w * avg_winv};
  });
}

double fit_loglog_slope(std::span<const DivergenceRow> rows) {
  if (rows.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "slope fit needs two rows");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n_index));
    const double y = std::log(r.product);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<long> log_spaced_indices(long n_min, long n_max, int points) {
  if (n_min < 1 || n_max < n_min || points < 1) {
    throw Error(ErrorCode::invalid_argument,
                "need 1 <= n_min <= n_max and at least one point");
  }
  std::vector<long> out;
  const double l0 = std::log10(static_cast<double>(n_min));
  const double l1 = std::log10(static_cast<double>(n_max));
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    const long n = std::lround(std::pow(10.0, l0 + (l1 - l0) * t));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

}  // namespace a2w
