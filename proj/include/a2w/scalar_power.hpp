#pragma once

// Closed-form calculus for scalar power weights a|x|^gamma.

#include "a2w/domain.hpp"
#include "a2w/rational.hpp"
#include "a2w/search.hpp"

namespace a2w {

class ScalarPowerWeight {
 public:
  ScalarPowerWeight(double coeff, Rational exponent);

  double coeff() const noexcept { return coeff_; }
  const Rational& exponent() const noexcept { return exponent_; }

 private:
  double coeff_;
  Rational exponent_;
};

/// Integral of |x|^gamma over I. Origin-free intervals use a cancellation-free
/// form of the antiderivative (log for gamma = -1); intervals straddling 0 are
/// split there. Throws non_integrable if 0 is in I and gamma <= -1.
double integral_abs_pow(const Rational& gamma, const Interval& interval);

/// Same as integral_abs_pow for a real exponent.
double integral_abs_pow(double gamma, const Interval& interval);

/// integral_abs_pow / |I|.
double average_abs_pow(const Rational& gamma, const Interval& interval);
double average_abs_pow(double gamma, const Interval& interval);

/// -1 < gamma < 1, exactly.
bool scalar_is_a2(const Rational& gamma);

/// <|x|^gamma>_I <|x|^-gamma>_I (the coefficient cancels).
double scalar_a2_product(const Rational& gamma, const Interval& interval);

/// The A2 constant sup_I <|x|^g>_I <|x|^-g>_I of |x|^g, -1 < g < 1.
///
/// By dilation and reflection every interval is equivalent to [-s, 1] with
/// 0 <= s <= 1 or to [t, 1] with 0 < t < 1; the one-sided family is largest
/// at t = 0, so the constant is
///   max_{0<=s<=1} (1 + s^(1+g)) (1 + s^(1-g)) / ((1 - g^2) (1 + s)^2).
/// The maximum is located by a dense scan plus golden-section polishing.
/// Note the value exceeds 1/(1-g^2) (the [0,1] value) for every g != 0.
double power_a2_constant(double gamma);

/// Numeric sup search for [w]_A2. Throws not_a2 if the exponent is outside
/// (-1, 1). The result is a lower bound of the true supremum.
SupSearchResult scalar_a2_constant_estimate(const ScalarPowerWeight& w,
                                            const SupSearchConfig& cfg);

}  // namespace a2w
