#include "a2w/multivar.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <queue>
#include <string>

#include "a2w/quadrature.hpp"
#include "a2w/scalar_power.hpp"

namespace a2w {
namespace {

void validate_coeff(const DenseMatrix& coeff) {
  const auto n = coeff.rows();
  if (n < 1 || n > kMaxDimension || coeff.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "coefficient matrix must be n x n with 1 <= n <= 8");
  }
  if (!coeff.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "non-finite coefficient");
  }
}

void validate_ambient(int d) {
  if (d < 2 || d > 3) {
    throw Error(ErrorCode::invalid_argument,
                "ambient dimension must be 2 or 3, got " + std::to_string(d));
  }
}

ExponentMatrix normalized(const ExponentMatrix& e, const DenseMatrix& coeff) {
  ExponentMatrix out = e;
  for (int i = 0; i < e.dim(); ++i)
    for (int j = 0; j < e.dim(); ++j)
      if (i != j && coeff(i, j) == cplx(0.0, 0.0))
        out(i, j) = midpoint(e(i, i), e(j, j));
  return out;
}

void require_midpoint(const ExponentMatrix& e) {
  if (!e.satisfies_midpoint()) {
    throw Error(ErrorCode::midpoint_condition_violated,
                "exponents do not satisfy the midpoint condition");
  }
}

DenseMatrix inverse_coeff(const DenseMatrix& a) {
  const A2Report probe = [&] {
    A2Report r;
    append_coefficient_findings(a, r);
    return r;
  }();
  if (!probe.reasons.empty()) {
    throw Error(ErrorCode::precondition_violated,
                "inverse needs positive definite coefficients");
  }
  return adjugate_inverse(a);
}

Verdict combine(Positivity coeff, bool exponents_ok) {
  if (coeff == Positivity::positive && exponents_ok) return Verdict::a2;
  if (coeff == Positivity::marginal && exponents_ok) return Verdict::marginal;
  return Verdict::not_a2;
}

void append_range_findings(const ExponentMatrix& e, const Rational& bound,
                           int coordinate, A2Report& report, bool& ok) {
  for (int i = 0; i < e.dim(); ++i) {
    const Rational& g = e(i, i);
    if (!(-bound < g && g < bound)) {
      ok = false;
      report.reasons.push_back(
          {FindingKind::diagonal_exponent_out_of_range,
           {i + 1, i + 1},
           coordinate,
           "diagonal exponent " + g.to_string() + " is outside (" +
               (-bound).to_string() + ", " + bound.to_string() + ")"});
    }
  }
}

}  // namespace

Type1aWeight::Type1aWeight(DenseMatrix coeff,
                           std::vector<ExponentMatrix> exponents)
    : coeff_(std::move(coeff)), exponents_(std::move(exponents)) {
  validate_coeff(coeff_);
  validate_ambient(static_cast<int>(exponents_.size()));
  for (const auto& e : exponents_) {
    if (e.dim() != coeff_.rows()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "exponent matrix size differs from the coefficients");
    }
  }
}

Type1bWeight::Type1bWeight(DenseMatrix coeff, ExponentMatrix exponents, int d)
    : coeff_(std::move(coeff)), exponents_(std::move(exponents)), d_(d) {
  validate_coeff(coeff_);
  validate_ambient(d_);
  if (exponents_.dim() != coeff_.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "exponent matrix size differs from the coefficients");
  }
}

Type1aWeight build_type1a(const DenseMatrix& coeff,
                          const std::vector<std::vector<Rational>>& diagonals) {
  std::vector<ExponentMatrix> exps;
  for (const auto& diag : diagonals) {
    if (static_cast<Eigen::Index>(diag.size()) != coeff.rows()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "exponent list size differs from the coefficients");
    }
    exps.push_back(ExponentMatrix::from_diagonal(diag));
  }
  return Type1aWeight(coeff, std::move(exps));
}

Type1bWeight build_type1b(const DenseMatrix& coeff,
                          std::span<const Rational> diagonal, int d) {
  if (static_cast<Eigen::Index>(diagonal.size()) != coeff.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "exponent list size differs from the coefficients");
  }
  return Type1bWeight(coeff, ExponentMatrix::from_diagonal(diagonal), d);
}

A2Report check_a2_type1a(const Type1aWeight& w) {
  A2Report report;
  const Positivity coeff = append_coefficient_findings(w.coeff(), report);
  bool ok = true;
  for (int c = 0; c < w.ambient_dim(); ++c) {
    ok &= append_midpoint_findings(w.exponents()[c], w.coeff(), c + 1, report);
    append_range_findings(w.exponents()[c], Rational(1), c + 1, report, ok);
  }
  report.verdict = combine(coeff, ok);
  return report;
}

A2Report check_a2_type1b(const Type1bWeight& w) {
  A2Report report;
  const Positivity coeff = append_coefficient_findings(w.coeff(), report);
  bool ok = append_midpoint_findings(w.exponents(), w.coeff(), 0, report);
  append_range_findings(w.exponents(), Rational(w.ambient_dim()), 0, report, ok);
  report.verdict = combine(coeff, ok);
  return report;
}

DenseMatrix evaluate(const Type1aWeight& w, std::span<const double> x) {
  if (static_cast<int>(x.size()) != w.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "point has the wrong dimension");
  }
  const int n = w.dim();
  DenseMatrix out = w.coeff();
  for (int c = 0; c < w.ambient_dim(); ++c) {
    const double ax = std::abs(x[c]);
    if (ax == 0.0) {
      throw Error(ErrorCode::evaluation_at_origin,
                  "Type 1.a weight evaluated on a coordinate hyperplane");
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(i, j) *= std::pow(ax, w.exponents()[c](i, j).to_double());
  }
  return out;
}

DenseMatrix evaluate(const Type1bWeight& w, std::span<const double> x) {
  if (static_cast<int>(x.size()) != w.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "point has the wrong dimension");
  }
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 == 0.0) {
    throw Error(ErrorCode::evaluation_at_origin,
                "Type 1.b weight evaluated at the origin");
  }
  const double r = std::sqrt(r2);
  const int n = w.dim();
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = w.coeff()(i, j) * std::pow(r, w.exponents()(i, j).to_double());
  return out;
}

MultiPowerTerm symbolic_det(const Type1aWeight& w) {
  MultiPowerTerm term{leibniz_det(w.coeff()), {}};
  for (const auto& e : w.exponents()) {
    const ExponentMatrix ne = normalized(e, w.coeff());
    require_midpoint(ne);
    term.exponents.push_back(ne.trace());
  }
  return term;
}

PowerTerm symbolic_det(const Type1bWeight& w) {
  const ExponentMatrix ne = normalized(w.exponents(), w.coeff());
  require_midpoint(ne);
  return {leibniz_det(w.coeff()), ne.trace()};
}

Type1aWeight inverse(const Type1aWeight& w) {
  std::vector<ExponentMatrix> exps;
  for (const auto& e : w.exponents()) {
    const ExponentMatrix ne = normalized(e, w.coeff());
    require_midpoint(ne);
    exps.push_back(-ne);
  }
  return Type1aWeight(inverse_coeff(w.coeff()), std::move(exps));
}

Type1bWeight inverse(const Type1bWeight& w) {
  const ExponentMatrix ne = normalized(w.exponents(), w.coeff());
  require_midpoint(ne);
  return Type1bWeight(inverse_coeff(w.coeff()), -ne, w.ambient_dim());
}

Hermitian average_type1a(const Type1aWeight& w, const Cube& q) {
  if (q.dim() != w.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "cube dimension differs from the weight");
  }
  const int n = w.dim();
  DenseMatrix out = w.coeff();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (out(i, j) == cplx(0.0, 0.0)) continue;
      for (int c = 0; c < q.dim(); ++c) {
        const Interval edge = q.edge(c);
        const Rational& g = w.exponents()[c](i, j);
        if (edge.contains_origin() && g <= Rational(-1)) {
          throw Error(ErrorCode::non_integrable,
                      "entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") coordinate " +
                          std::to_string(c + 1) + " exponent " +
                          g.to_string() + " is not integrable near 0");
        }
        out(i, j) *= average_abs_pow(g, edge);
      }
    }
  }
  return Hermitian::symmetrize(out);
}

namespace {

struct Cell {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  bool at_origin = false;
  std::vector<double> value;
  std::vector<double> error;
  double worst = 0.0;
};

struct CellOrder {
  bool operator()(const Cell* x, const Cell* y) const {
    if (x->worst != y->worst) return x->worst < y->worst;
    return x->lo > y->lo;
  }
};

class RadialIntegrator {
 public:
  RadialIntegrator(int d, std::vector<double> exponents,
                   std::vector<double> weights)
      : d_(d), exps_(std::move(exponents)), weights_(std::move(weights)),
        high_(gauss_legendre(8)), low_(gauss_legendre(7)) {}

  /// Integrals of ||x||^exps_k over q, with the combined error per exponent.
  std::vector<double> run(const Cube& q, double tol, int max_cells) {
    std::vector<Cell> initial(1);
    for (int c = 0; c < d_; ++c) {
      initial[0].lo[c] = q.lower()[c];
      initial[0].hi[c] = q.lower()[c] + q.side();
    }
    for (int c = 0; c < d_; ++c) {
      std::vector<Cell> next;
      for (const Cell& cell : initial) {
        if (cell.lo[c] < 0.0 && cell.hi[c] > 0.0) {
          Cell left = cell, right = cell;
          left.hi[c] = 0.0;
          right.lo[c] = 0.0;
          next.push_back(left);
          next.push_back(right);
        } else {
          next.push_back(cell);
        }
      }
      initial = std::move(next);
    }
    const std::size_t k = exps_.size();
    std::vector<double> total(k, 0.0), total_err(k, 0.0);
    for (Cell& cell : initial) {
      cells_.push_back(cell);
      fill(cells_.back());
      for (std::size_t e = 0; e < k; ++e) {
        total[e] += cells_.back().value[e];
        total_err[e] += cells_.back().error[e];
      }
      queue_.push(&cells_.back());
    }
    const double volume = q.volume();
    const std::size_t children = std::size_t{1} << d_;
    auto converged = [&] {
      for (std::size_t e = 0; e < k; ++e)
        if (!(weights_[e] * total_err[e] <=
              tol * (volume + weights_[e] * std::abs(total[e]))))
          return false;
      return true;
    };
    while (!converged()) {
      if (cells_.size() + children - 1 > static_cast<std::size_t>(max_cells)) {
        throw Error(ErrorCode::tolerance_not_met,
                    "cube quadrature tolerance not met within " +
                        std::to_string(max_cells) + " cells");
      }
      Cell* worst = queue_.top();
      queue_.pop();
      for (std::size_t e = 0; e < k; ++e) {
        total[e] -= worst->value[e];
        total_err[e] -= worst->error[e];
      }
      const Cell parent = *worst;
      for (std::size_t m = 0; m < children; ++m) {
        Cell child;
        for (int c = 0; c < d_; ++c) {
          const double mid = 0.5 * (parent.lo[c] + parent.hi[c]);
          if ((m >> c) & 1U) {
            child.lo[c] = mid;
            child.hi[c] = parent.hi[c];
          } else {
            child.lo[c] = parent.lo[c];
            child.hi[c] = mid;
          }
        }
        Cell* slot;
        if (m == 0) {
          slot = worst;
          *slot = child;
        } else {
          cells_.push_back(child);
          slot = &cells_.back();
        }
        fill(*slot);
        for (std::size_t e = 0; e < k; ++e) {
          total[e] += slot->value[e];
          total_err[e] += slot->error[e];
        }
        queue_.push(slot);
      }
    }
    std::vector<double> exact(k, 0.0);
    for (const Cell& cell : cells_)
      for (std::size_t e = 0; e < k; ++e) exact[e] += cell.value[e];
    return exact;
  }

 private:
  void fill(Cell& cell) const {
    const std::size_t k = exps_.size();
    bool at_origin = true;
    double diag2 = 0.0;
    double volume = 1.0;
    for (int c = 0; c < d_; ++c) {
      at_origin &= cell.lo[c] == 0.0 || cell.hi[c] == 0.0;
      const double len = cell.hi[c] - cell.lo[c];
      diag2 += len * len;
      volume *= len;
    }
    cell.at_origin = at_origin;
    const std::vector<double> hi = tensor(cell, high_);
    const std::vector<double> lo = tensor(cell, low_);
    cell.value.assign(k, 0.0);
    cell.error.assign(k, 0.0);
    cell.worst = 0.0;
    const double sphere = d_ == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    const double radius = std::sqrt(diag2);
    for (std::size_t e = 0; e < k; ++e) {
      if (exps_[e] == 0.0) {
        cell.value[e] = volume;
        continue;
      }
      cell.value[e] = hi[e];
      double err = std::abs(hi[e] - lo[e]);
      if (at_origin) {
        const double p = exps_[e] + d_;
        err = std::max(err, sphere * std::pow(radius, p) / (p * (1 << d_)));
      }
      cell.error[e] = err;
      cell.worst = std::max(cell.worst, weights_[e] * err);
    }
  }

  std::vector<double> tensor(const Cell& cell, const GaussRule& rule) const {
    const std::size_t k = exps_.size();
    const std::size_t m = rule.nodes.size();
    std::vector<double> sums(k, 0.0);
    std::array<double, 3> half{}, mid{};
    double jacobian = 1.0;
    for (int c = 0; c < d_; ++c) {
      half[c] = 0.5 * (cell.hi[c] - cell.lo[c]);
      mid[c] = 0.5 * (cell.hi[c] + cell.lo[c]);
      jacobian *= half[c];
    }
    std::array<std::size_t, 3> idx{};
    const std::size_t points = d_ == 2 ? m * m : m * m * m;
    for (std::size_t p = 0; p < points; ++p) {
      std::size_t rest = p;
      double weight = 1.0;
      double r2 = 0.0;
      for (int c = 0; c < d_; ++c) {
        idx[c] = rest % m;
        rest /= m;
        const double x = mid[c] + half[c] * rule.nodes[idx[c]];
        r2 += x * x;
        weight *= rule.weights[idx[c]];
      }
      const double r = std::sqrt(r2);
      for (std::size_t e = 0; e < k; ++e) sums[e] += weight * std::pow(r, exps_[e]);
    }
    for (double& s : sums) s *= jacobian;
    return sums;
  }

  int d_;
  std::vector<double> exps_;
  std::vector<double> weights_;
  const GaussRule& high_;
  const GaussRule& low_;
  std::deque<Cell> cells_;
  std::priority_queue<Cell*, std::vector<Cell*>, CellOrder> queue_;
};

}  // namespace

Hermitian average_type1b(const Type1bWeight& w, const Cube& q, double tol,
                         int max_cells) {
  if (q.dim() != w.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "cube dimension differs from the weight");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  }
  const int n = w.dim();
  const int d = w.ambient_dim();
  std::vector<double> exps;
  std::vector<double> weights;
  std::vector<int> slot(static_cast<std::size_t>(n * n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx a = w.coeff()(i, j);
      if (a == cplx(0.0, 0.0)) continue;
      const Rational& g = w.exponents()(i, j);
      if (q.contains_origin() && g <= Rational(-d)) {
        throw Error(ErrorCode::non_integrable,
                    "entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") with exponent " +
                        g.to_string() + " is not integrable near 0");
      }
      const double gd = g.to_double();
      std::size_t e = 0;
      while (e < exps.size() && exps[e] != gd) ++e;
      if (e == exps.size()) {
        exps.push_back(gd);
        weights.push_back(0.0);
      }
      weights[e] = std::max(weights[e], std::abs(a));
      slot[static_cast<std::size_t>(i * n + j)] = static_cast<int>(e);
    }
  }
  std::vector<double> integrals;
  if (!exps.empty()) {
    RadialIntegrator integrator(d, exps, weights);
    integrals = integrator.run(q, tol, max_cells);
  }
  const double volume = q.volume();
  DenseMatrix out = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int e = slot[static_cast<std::size_t>(i * n + j)];
      if (e >= 0) out(i, j) = w.coeff()(i, j) * (integrals[e] / volume);
    }
  return Hermitian::symmetrize(out);
}

Cube search_cube(const SearchPoint& p, int d, CubeFamily family) {
  const double side = 2.0 * p.halflength;
  const double corner = family == CubeFamily::origin_cornered
                            ? 0.0
                            : p.center - p.halflength;
  return Cube(std::vector<double>(static_cast<std::size_t>(d), corner), side);
}

namespace {

std::vector<SearchPoint> cube_candidates(const SupSearchConfig& cfg,
                                         CubeFamily family) {
  cfg.validate();
  std::vector<SearchPoint> out;
  if (family == CubeFamily::all) out = interval_candidates(cfg);
  for (double h : cfg.halflength_grid) {
    out.push_back({family == CubeFamily::all ? h : 0.0, h});
  }
  return out;
}

CubeSearchResult cube_search(const std::function<double(const Cube&)>& value,
                             int d, Functional f, const SupSearchConfig& cfg,
                             CubeFamily family) {
  const auto candidates = cube_candidates(cfg, family);
  const auto raw = maximize(
      [&](const SearchPoint& p) { return value(search_cube(p, d, family)); },
      candidates, log_step(cfg.halflength_grid), cfg.refine_rounds);
  return CubeSearchResult{raw.value, search_cube(raw.argmax, d, family),
                          raw.evaluations, f};
}

}  // namespace

CubeSearchResult estimate_a2_cubes(const Type1aWeight& w, Functional f,
                                   const SupSearchConfig& cfg,
                                   CubeFamily family) {
  if (check_a2_type1a(w).verdict != Verdict::a2) {
    throw Error(ErrorCode::precondition_violated,
                "estimate_a2_cubes needs an A2 Type 1.a weight");
  }
  const Type1aWeight winv = inverse(w);
  return cube_search(
      [&](const Cube& q) {
        return a2_functional(f, average_type1a(w, q), average_type1a(winv, q));
      },
      w.ambient_dim(), f, cfg, family);
}

CubeSearchResult estimate_a2_cubes(const Type1bWeight& w, Functional f,
                                   const SupSearchConfig& cfg,
                                   CubeFamily family) {
  if (check_a2_type1b(w).verdict != Verdict::a2) {
    throw Error(ErrorCode::precondition_violated,
                "estimate_a2_cubes needs an A2 Type 1.b weight");
  }
  const Type1bWeight winv = inverse(w);
  const double tol = cfg.quadrature_tol;
  return cube_search(
      [&](const Cube& q) {
        return a2_functional(f, average_type1b(w, q, tol),
                             average_type1b(winv, q, tol));
      },
      w.ambient_dim(), f, cfg, family);
}

}  // namespace a2w
