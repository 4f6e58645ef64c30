#include "a2w/search.hpp"

#include <cmath>
#include <limits>

#include "a2w/error.hpp"
#include "a2w/parallel.hpp"

namespace a2w {
namespace {

constexpr int kGoldenIterations = 24;
constexpr double kInvPhi = 0.6180339887498949;

double sanitize(double v) {
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

struct LineBest {
  double t;
  double value;
};

// Golden-section maximization of g on [lo, hi]; returns the best point seen.
template <typename G>
LineBest golden_max(G&& g, double lo, double hi) {
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = g(c);
  double fd = g(d);
  LineBest best = fc >= fd ? LineBest{c, fc} : LineBest{d, fd};
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = g(c);
      if (fc > best.value) best = {c, fc};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = g(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Functional f) {
  return f == Functional::trace ? "trace" : "norm";
}

Functional parse_functional(std::string_view name) {
  if (name == "trace") return Functional::trace;
  if (name == "norm") return Functional::norm;
  throw Error(ErrorCode::invalid_argument,
              "unknown functional '" + std::string(name) + "'");
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorCode::invalid_argument, "logspace: bad arguments");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double l0 = std::log10(lo);
  const double l1 = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    out[k] = std::pow(10.0, l0 + (l1 - l0) * k / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void SupSearchConfig::validate() const {
  if (center_grid.empty() || halflength_grid.empty()) {
    throw Error(ErrorCode::invalid_argument, "search grids must be nonempty");
  }
  for (double h : halflength_grid) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw Error(ErrorCode::invalid_argument,
                  "search half-lengths must be positive");
    }
  }
  for (double c : center_grid) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::invalid_argument, "search centers must be finite");
    }
  }
  if (refine_rounds < 0 || !(quadrature_tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "bad refinement settings");
  }
}

SupSearchConfig SupSearchConfig::log_grid(double lo, double hi, int points,
                                          int refine_rounds,
                                          double quadrature_tol) {
  SupSearchConfig cfg;
  const auto ladder = logspace(lo, hi, points);
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it)
    cfg.center_grid.push_back(-*it);
  cfg.center_grid.push_back(0.0);
  cfg.center_grid.insert(cfg.center_grid.end(), ladder.begin(), ladder.end());
  cfg.halflength_grid = ladder;
  cfg.refine_rounds = refine_rounds;
  cfg.quadrature_tol = quadrature_tol;
  return cfg;
}

SupSearchConfig SupSearchConfig::standard() {
  return log_grid(1e-6, 1e6, 49, 20);
}

SupSearchConfig SupSearchConfig::quadrature() {
  return log_grid(1e-3, 1e3, 13, 5, 1e-9);
}

std::vector<SearchPoint> interval_candidates(const SupSearchConfig& cfg) {
  std::vector<SearchPoint> out;
  out.reserve(cfg.center_grid.size() * cfg.halflength_grid.size());
  for (double c : cfg.center_grid)
    for (double h : cfg.halflength_grid) out.push_back({c, h});
  return out;
}

double log_step(const std::vector<double>& grid) {
  double step = std::log(2.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (grid[k - 1] > 0.0 && grid[k] > 0.0) {
      step = std::max(step, std::abs(std::log(grid[k] / grid[k - 1])));
    }
  }
  return step;
}

RawSearchResult maximize(const SearchObjective& objective,
                         std::span<const SearchPoint> candidates,
                         double log_halflength_step, int refine_rounds,
                         const SearchObserver& observer) {
  if (candidates.empty()) {
    throw Error(ErrorCode::invalid_argument, "no search candidates");
  }
  const auto values = parallel_map<double>(
      candidates.size(),
      [&](std::size_t i) { return sanitize(objective(candidates[i])); });

  std::size_t best_index = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (observer) observer(candidates[i], values[i]);
    if (values[i] > values[best_index]) best_index = i;
  }
  RawSearchResult result{values[best_index], candidates[best_index],
                         candidates.size()};

  auto eval = [&](const SearchPoint& p) {
    ++result.evaluations;
    const double v = sanitize(objective(p));
    if (observer) observer(p, v);
    return v;
  };

  double center_radius = result.argmax.halflength;
  double log_radius = log_halflength_step;
  for (int round = 0; round < refine_rounds; ++round) {
    const double h = result.argmax.halflength;
    const double c0 = result.argmax.center;
    const auto along_center = golden_max(
        [&](double c) { return eval({c, h}); }, c0 - center_radius,
        c0 + center_radius);
    if (along_center.value > result.value) {
      result.value = along_center.value;
      result.argmax = {along_center.t, h};
    }

    const double c = result.argmax.center;
    const double l0 = std::log(result.argmax.halflength);
    const auto along_length = golden_max(
        [&](double l) { return eval({c, std::exp(l)}); }, l0 - log_radius,
        l0 + log_radius);
    if (along_length.value > result.value) {
      result.value = along_length.value;
      result.argmax = {c, std::exp(along_length.t)};
    }

    center_radius = 0.5 * result.argmax.halflength * std::pow(0.5, round);
    log_radius *= 0.5;
  }
  return result;
}

SupSearchResult maximize_over_intervals(
    const std::function<double(const Interval&)>& objective,
    const SupSearchConfig& cfg, Functional functional,
    const std::function<void(const Interval&, double)>& observer) {
  cfg.validate();
  const auto candidates = interval_candidates(cfg);
  SearchObserver point_observer;
  if (observer) {
    point_observer = [&](const SearchPoint& p, double v) {
      observer(Interval::from_center(p.center, p.halflength), v);
    };
  }
  const auto raw = maximize(
      [&](const SearchPoint& p) {
        return objective(Interval::from_center(p.center, p.halflength));
      },
      candidates, log_step(cfg.halflength_grid), cfg.refine_rounds,
      point_observer);
  return SupSearchResult{raw.value,
                         Interval::from_center(raw.argmax.center,
                                               raw.argmax.halflength),
                         raw.evaluations, functional};
}

}  // namespace a2w
