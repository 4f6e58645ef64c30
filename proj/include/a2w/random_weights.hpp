#pragma once

// Seeded generators of valid weights for property checks.

#include <cstdint>
#include <random>

#include "a2w/multivar.hpp"
#include "a2w/type1.hpp"
#include "a2w/type2.hpp"

namespace a2w {

using Rng = std::mt19937_64;

/// Rng seeded from (seed, stream, index) via std::seed_seq.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);

/// B B* + (n / 2) I with B entries uniform in the unit square (complex) or
/// [-1, 1] (real).
DenseMatrix random_hpd(Rng& rng, int n, bool complex_entries);

/// p / den with |p| < den, so |result| < 1.
Rational random_exponent(Rng& rng, int den = 12);

/// Type 1 weight with random positive definite coefficients and diagonal
/// exponents in (-1, 1); check_a2 returns a2.
SymbolicPowerMatrix random_type1_a2(Rng& rng, int n);

/// Log-uniform magnitude in [lo, hi] with a random sign.
double random_point(Rng& rng, double lo = 0.1, double hi = 10.0);

Type2Weight random_type2(Rng& rng, UnitaryFamily family);

Type1aWeight random_type1a(Rng& rng, int n, int d);
Type1bWeight random_type1b(Rng& rng, int n, int d);

}  // namespace a2w
