#include "a2w/scalar_power.hpp"

#include <cmath>
#include <string>

#include "a2w/error.hpp"

namespace a2w {
namespace {

// Integral of x^(p-1) over [a, b] with 0 < a < b, p = gamma + 1.
double positive_side_integral(double p, double a, double b) {
  const double log_ratio = std::log1p((b - a) / a);
  if (p == 0.0) return log_ratio;
  return std::pow(a, p) * std::expm1(p * log_ratio) / p;
}

[[noreturn]] void throw_non_integrable(double gamma, const Interval& I) {
  throw Error(ErrorCode::non_integrable,
              "|x|^" + std::to_string(gamma) + " is not integrable on [" +
                  std::to_string(I.a()) + ", " + std::to_string(I.b()) + "]");
}

}  // namespace

ScalarPowerWeight::ScalarPowerWeight(double coeff, Rational exponent)
    : coeff_(coeff), exponent_(exponent) {
  if (!(coeff > 0.0) || !std::isfinite(coeff)) {
    throw Error(ErrorCode::invalid_argument,
                "scalar power weight needs a positive coefficient");
  }
}

double integral_abs_pow(double gamma, const Interval& I) {
  const double p = gamma + 1.0;
  double a = I.a();
  double b = I.b();
  if (I.contains_origin()) {
    if (!(p > 0.0)) throw_non_integrable(gamma, I);
    return (std::pow(-a, p) + std::pow(b, p)) / p;
  }
  if (b < 0.0) {
    const double t = a;
    a = -b;
    b = -t;
  }
  return positive_side_integral(p, a, b);
}

double integral_abs_pow(const Rational& gamma, const Interval& I) {
  if (I.contains_origin() && gamma <= Rational(-1)) {
    throw_non_integrable(gamma.to_double(), I);
  }
  return integral_abs_pow(gamma.to_double(), I);
}

double average_abs_pow(double gamma, const Interval& I) {
  return integral_abs_pow(gamma, I) / I.length();
}

double average_abs_pow(const Rational& gamma, const Interval& I) {
  return integral_abs_pow(gamma, I) / I.length();
}

bool scalar_is_a2(const Rational& gamma) {
  return Rational(-1) < gamma && gamma < Rational(1);
}

double scalar_a2_product(const Rational& gamma, const Interval& I) {
  return average_abs_pow(gamma, I) * average_abs_pow(-gamma, I);
}

double power_a2_constant(double g) {
  if (!(std::abs(g) < 1.0)) {
    throw Error(ErrorCode::not_a2, "|x|^gamma is A2 only for -1 < gamma < 1");
  }
  if (g == 0.0) return 1.0;
  const double denom = 1.0 - g * g;
  auto f = [&](double s) {
    return (1.0 + std::pow(s, 1.0 + g)) * (1.0 + std::pow(s, 1.0 - g)) /
           (denom * (1.0 + s) * (1.0 + s));
  };
  constexpr int kScan = 4000;
  int best_k = 0;
  double best = f(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double v = f(static_cast<double>(k) / kScan);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double lo = static_cast<double>(std::max(best_k - 1, 0)) / kScan;
  double hi = static_cast<double>(std::min(best_k + 1, kScan)) / kScan;
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 100; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

SupSearchResult scalar_a2_constant_estimate(const ScalarPowerWeight& w,
                                            const SupSearchConfig& cfg) {
  if (!scalar_is_a2(w.exponent())) {
    throw Error(ErrorCode::not_a2, "exponent " + w.exponent().to_string() +
                                       " is outside (-1, 1)");
  }
  const Rational gamma = w.exponent();
  return maximize_over_intervals(
      [gamma](const Interval& I) { return scalar_a2_product(gamma, I); }, cfg,
      Functional::trace);
}

}  // namespace a2w
