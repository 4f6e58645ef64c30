#include "a2w/quadrature.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <string>

namespace a2w {
namespace {

// 15-point Kronrod abscissae on [0, 1] half of [-1, 1]; odd indices are the
// 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  DenseMatrix value;
  DenseMatrix error;  // real, nonnegative
  double worst;
  bool forced;  // origin panel longer than 1; must be split
};

struct PanelOrder {
  bool operator()(const Panel* x, const Panel* y) const {
    if (x->worst != y->worst) return x->worst < y->worst;
    return x->lo > y->lo;  // deterministic tie-break
  }
};

class Integrator {
 public:
  Integrator(const MatrixIntegrand& f, const QuadratureOptions& opt)
      : f_(f), opt_(opt) {}

  DenseMatrix run(const Interval& interval) {
    if (interval.contains_origin() && !(f_.singular_exponent > -1.0)) {
      throw Error(ErrorCode::non_integrable,
                  "integrand singular exponent " +
                      std::to_string(f_.singular_exponent) +
                      " is not integrable at the origin");
    }
    std::vector<std::pair<double, double>> initial;
    if (interval.a() < 0.0 && interval.b() > 0.0) {
      initial = {{interval.a(), 0.0}, {0.0, interval.b()}};
    } else {
      initial = {{interval.a(), interval.b()}};
    }
    const int n = f_.n;
    DenseMatrix total = DenseMatrix::Zero(n, n);
    Eigen::MatrixXd total_err = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [lo, hi] : initial) {
      panels_.push_back(make_panel(lo, hi));
    }
    for (auto& p : panels_) {
      forced_ += p.forced;
      total += p.value;
      total_err += p.error.real();
      queue_.push(&p);
    }

    while (!converged(total, total_err)) {
      if (static_cast<int>(panels_.size()) + 1 > opt_.max_panels) {
        throw Error(ErrorCode::tolerance_not_met,
                    "quadrature tolerance not met within " +
                        std::to_string(opt_.max_panels) + " panels");
      }
      Panel* worst = queue_.top();
      queue_.pop();
      const double mid = 0.5 * (worst->lo + worst->hi);
      if (!(mid > worst->lo && mid < worst->hi)) {
        throw Error(ErrorCode::tolerance_not_met,
                    "quadrature panel cannot be subdivided further");
      }
      forced_ -= worst->forced;
      total -= worst->value;
      total_err -= worst->error.real();
      const double lo = worst->lo;
      const double hi = worst->hi;
      *worst = make_panel(lo, mid);
      panels_.push_back(make_panel(mid, hi));
      forced_ += worst->forced + panels_.back().forced;
      total += worst->value + panels_.back().value;
      total_err += worst->error.real() + panels_.back().error.real();
      queue_.push(worst);
      queue_.push(&panels_.back());
    }

    DenseMatrix exact_sum = DenseMatrix::Zero(n, n);
    for (const auto& p : panels_) exact_sum += p.value;
    return exact_sum;
  }

 private:
  bool converged(const DenseMatrix& total, const Eigen::MatrixXd& err) const {
    if (forced_ > 0) return false;
    for (Eigen::Index i = 0; i < total.rows(); ++i)
      for (Eigen::Index j = 0; j < total.cols(); ++j)
        if (!(err(i, j) <= opt_.abs_tol + opt_.rel_tol * std::abs(total(i, j))))
          return false;
    return true;
  }

  Panel make_panel(double lo, double hi) const {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const int n = f_.n;
    DenseMatrix kronrod = DenseMatrix::Zero(n, n);
    DenseMatrix gauss = DenseMatrix::Zero(n, n);
    const DenseMatrix fc = f_.eval(center);
    kronrod += kWgk[7] * fc;
    gauss += kWg[3] * fc;
    for (int k = 0; k < 7; ++k) {
      const double dx = half * kXgk[k];
      const DenseMatrix sum = f_.eval(center - dx) + f_.eval(center + dx);
      kronrod += kWgk[k] * sum;
      if (k % 2 == 1) gauss += kWg[k / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;

    const bool touches_origin = lo == 0.0 || hi == 0.0;
    const double len = hi - lo;
    Panel p{lo, hi, kronrod, DenseMatrix::Zero(n, n), 0.0,
            touches_origin && len > 1.0};
    double bound = 0.0;
    if (touches_origin && !p.forced) {
      const double power = f_.singular_exponent + 1.0;
      bound = 2.0 * f_.envelope * std::pow(len, power) / power;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double e = std::max(std::abs(kronrod(i, j) - gauss(i, j)), bound);
        p.error(i, j) = e;
        p.worst = std::max(p.worst, e);
      }
    }
    if (p.forced) p.worst = std::numeric_limits<double>::infinity();
    if (!kronrod.allFinite()) {
      throw Error(ErrorCode::tolerance_not_met,
                  "integrand is not finite on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
    }
    return p;
  }

  const MatrixIntegrand& f_;
  QuadratureOptions opt_;
  std::deque<Panel> panels_;  // stable addresses
  int forced_ = 0;
  std::priority_queue<Panel*, std::vector<Panel*>, PanelOrder> queue_;
};

GaussRule compute_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double pi = std::acos(-1.0);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

DenseMatrix integrate(const MatrixIntegrand& f, const Interval& interval,
                      const QuadratureOptions& options) {
  Integrator integrator(f, options);
  return integrator.run(interval);
}

double integrate(const ScalarIntegrand& f, const Interval& interval,
                 const QuadratureOptions& options) {
  MatrixIntegrand wrapped{
      1,
      [&](double x) {
        DenseMatrix m(1, 1);
        m(0, 0) = f.eval(x);
        return m;
      },
      f.singular_exponent, f.envelope};
  return integrate(wrapped, interval, options)(0, 0).real();
}

SelfAdjoint<cplx> average_numeric(const MatrixIntegrand& f,
                                  const Interval& interval, double tol,
                                  int max_panels) {
  const QuadratureOptions opt{tol * interval.length(), tol, max_panels};
  const DenseMatrix integral = integrate(f, interval, opt);
  return SelfAdjoint<cplx>::symmetrize(integral / interval.length());
}

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) {
    throw Error(ErrorCode::invalid_argument, "Gauss-Legendre order out of range");
  }
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, compute_gauss_legendre(order)).first;
  }
  return it->second;
}

}  // namespace a2w
