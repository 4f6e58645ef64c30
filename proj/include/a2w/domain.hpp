#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "a2w/error.hpp"

namespace a2w {

/// Closed interval [a, b] with a < b, both finite.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw Error(ErrorCode::invalid_interval,
                  "interval requires finite a < b, got [" + std::to_string(a) +
                      ", " + std::to_string(b) + "]");
    }
  }

  static Interval from_center(double center, double halflength) {
    return Interval(center - halflength, center + halflength);
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double center() const noexcept { return 0.5 * (a_ + b_); }
  double halflength() const noexcept { return 0.5 * (b_ - a_); }
  bool contains_origin() const noexcept { return a_ <= 0.0 && 0.0 <= b_; }

 private:
  double a_;
  double b_;
};

/// Axis-aligned cube in R^d (2 <= d <= 3): lower corner plus one side length,
/// so all edges are equal by construction.
class Cube {
 public:
  Cube(std::vector<double> lower, double side)
      : lower_(std::move(lower)), side_(side) {
    if (lower_.size() < 2 || lower_.size() > 3) {
      throw Error(ErrorCode::invalid_argument,
                  "cube dimension must be 2 or 3");
    }
    if (!(side > 0.0) || !std::isfinite(side)) {
      throw Error(ErrorCode::invalid_interval, "cube side must be positive");
    }
    for (double v : lower_) {
      if (!std::isfinite(v) || !std::isfinite(v + side)) {
        throw Error(ErrorCode::invalid_interval, "cube corner must be finite");
      }
    }
  }

  int dim() const noexcept { return static_cast<int>(lower_.size()); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  double side() const noexcept { return side_; }
  double volume() const noexcept { return std::pow(side_, dim()); }

  Interval edge(int coord) const {
    return Interval(lower_[coord], lower_[coord] + side_);
  }

  bool contains_origin() const noexcept {
    for (double v : lower_)
      if (v > 0.0 || v + side_ < 0.0) return false;
    return true;
  }

 private:
  std::vector<double> lower_;
  double side_;
};

}  // namespace a2w
