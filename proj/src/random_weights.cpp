#include "a2w/random_weights.hpp"

#include <cmath>

namespace a2w {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  // 53 random bits scaled to [0, 1).
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

DenseMatrix random_hpd(Rng& rng, int n, bool complex_entries) {
  DenseMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b(i, j) = cplx(uniform(rng, -1.0, 1.0),
                     complex_entries ? uniform(rng, -1.0, 1.0) : 0.0);
  DenseMatrix a = b * b.adjoint();
  a += DenseMatrix::Identity(n, n) * (0.5 * n);
  return SelfAdjoint<cplx>::symmetrize(a).matrix();
}

Rational random_exponent(Rng& rng, int den) {
  const auto span = static_cast<std::uint64_t>(2 * den - 1);
  const auto p = static_cast<std::int64_t>(rng() % span) - (den - 1);
  return Rational(p, den);
}

SymbolicPowerMatrix random_type1_a2(Rng& rng, int n) {
  const bool complex_entries = (rng() & 1U) != 0;
  const DenseMatrix a = random_hpd(rng, n, complex_entries);
  std::vector<Rational> diag;
  for (int i = 0; i < n; ++i) diag.push_back(random_exponent(rng));
  return build_type1(a, diag);
}

double random_point(Rng& rng, double lo, double hi) {
  const double mag = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return (rng() & 1U) ? mag : -mag;
}

Type2Weight random_type2(Rng& rng, UnitaryFamily family) {
  const int n = family == UnitaryFamily::rotation2d      ? 2
                : family == UnitaryFamily::rotation3d_euler ? 3
                                                            : 1 + static_cast<int>(rng() % 4);
  std::vector<double> alphas;
  std::vector<Rational> gammas;
  for (int k = 0; k < n; ++k) {
    alphas.push_back(uniform(rng, 0.5, 3.0));
    gammas.push_back(random_exponent(rng));
  }
  return Type2Weight(std::move(alphas), std::move(gammas), family);
}

Type1aWeight random_type1a(Rng& rng, int n, int d) {
  const DenseMatrix a = random_hpd(rng, n, (rng() & 1U) != 0);
  std::vector<std::vector<Rational>> diags(static_cast<std::size_t>(d));
  for (auto& diag : diags)
    for (int i = 0; i < n; ++i) diag.push_back(random_exponent(rng));
  return build_type1a(a, diags);
}

Type1bWeight random_type1b(Rng& rng, int n, int d) {
  const DenseMatrix a = random_hpd(rng, n, (rng() & 1U) != 0);
  std::vector<Rational> diag;
  for (int i = 0; i < n; ++i) diag.push_back(random_exponent(rng) * Rational(d));
  return build_type1b(a, diag, d);
}

}  // namespace a2w
