#pragma once

// Supremum search over families of averaging domains parametrized by a
// center and a half-length.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "a2w/domain.hpp"

namespace a2w {

enum class Functional { trace, norm };

std::string_view to_string(Functional f);
Functional parse_functional(std::string_view name);

/// `count` points from lo to hi, equally spaced in log10.
std::vector<double> logspace(double lo, double hi, int count);

struct SupSearchConfig {
  std::vector<double> center_grid;
  std::vector<double> halflength_grid;
  int refine_rounds = 20;
  double quadrature_tol = 1e-10;

  /// Throws invalid_argument on empty grids or non-positive half-lengths.
  void validate() const;

  /// centers {0} U +-logspace(lo, hi, points), half-lengths logspace(lo, hi,
  /// points).
  static SupSearchConfig log_grid(double lo, double hi, int points,
                                  int refine_rounds,
                                  double quadrature_tol = 1e-10);

  /// Default for closed-form averages: 1e-6..1e6, 49 points, 20 rounds.
  static SupSearchConfig standard();
  /// Cheaper default for quadrature-backed weights: 1e-3..1e3, 13 points,
  /// 5 rounds.
  static SupSearchConfig quadrature();
};

struct SupSearchResult {
  double estimate;
  Interval argmax;
  std::size_t evaluations;
  Functional functional;
};

struct SearchPoint {
  double center;
  double halflength;
};

struct RawSearchResult {
  double value;
  SearchPoint argmax;
  std::size_t evaluations;
};

using SearchObjective = std::function<double(const SearchPoint&)>;
using SearchObserver = std::function<void(const SearchPoint&, double)>;

/// Evaluates `objective` on every candidate (in parallel), takes the maximum
/// with ties going to the smallest candidate index, then runs
/// `refine_rounds` rounds of coordinate-wise golden-section refinement in
/// (center, log half-length) around the incumbent. Only strict improvements
/// are accepted, so the result is the objective value at `argmax`.
///
/// The objective must be safe to call concurrently. Non-finite values count
/// as -infinity. `observer`, when set, sees every evaluation from a single
/// thread.
RawSearchResult maximize(const SearchObjective& objective,
                         std::span<const SearchPoint> candidates,
                         double log_halflength_step, int refine_rounds,
                         const SearchObserver& observer = {});

/// Every (center, half-length) pair of the config, center-major.
std::vector<SearchPoint> interval_candidates(const SupSearchConfig& cfg);

/// Largest log-ratio between consecutive half-length grid points.
double log_step(const std::vector<double>& grid);

/// Interval-valued convenience wrapper over maximize().
SupSearchResult maximize_over_intervals(
    const std::function<double(const Interval&)>& objective,
    const SupSearchConfig& cfg, Functional functional,
    const std::function<void(const Interval&, double)>& observer = {});

}  // namespace a2w
