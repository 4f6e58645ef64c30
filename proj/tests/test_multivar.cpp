#include <doctest.h>

#include <cmath>

#include "a2w/error.hpp"
#include "a2w/multivar.hpp"
#include "a2w/random_weights.hpp"
#include "a2w/scalar_power.hpp"
#include "oracles.hpp"

using namespace a2w;

namespace {

DenseMatrix one(double v) {
  DenseMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

DenseMatrix mat2(double a, double b, double c, double d) {
  DenseMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double pow_avg_1d(double g, double a, double b) {
  return oracle::integral_abs_pow(g, a, b) / (b - a);
}

}  // namespace

TEST_CASE("checks on both multivariable types") {
  const auto a = build_type1a(mat2(5, 3, 3, 2),
                              {{Rational(1, 2), Rational(-2, 3)}, {0, 0}});
  CHECK(check_a2_type1a(a).verdict == Verdict::a2);
  CHECK(a.exponents()[0](0, 1) == Rational(-1, 12));
  const auto bad = build_type1a(mat2(5, 3, 3, 2), {{0, 0}, {1, 0}});
  const auto r = check_a2_type1a(bad);
  CHECK(r.verdict == Verdict::not_a2);
  REQUIRE(r.has_reason(FindingKind::diagonal_exponent_out_of_range));
  bool coord2 = false;
  for (const auto& f : r.reasons) coord2 = coord2 || f.coordinate == 2;
  CHECK(coord2);

  const std::vector<Rational> d3 = {Rational(-5, 2), Rational(1, 2)};
  CHECK(check_a2_type1b(build_type1b(mat2(5, 3, 3, 2), d3, 3)).verdict == Verdict::a2);
  CHECK(check_a2_type1b(build_type1b(mat2(5, 3, 3, 2), d3, 2)).verdict == Verdict::not_a2);
  const std::vector<Rational> d2 = {Rational(3, 2), Rational(-3, 2)};
  CHECK(check_a2_type1b(build_type1b(mat2(5, 3, 3, 2), d2, 2)).verdict == Verdict::a2);
  CHECK(check_a2_type1b(build_type1b(one(1), std::vector<Rational>{2}, 2)).verdict ==
        Verdict::not_a2);
}

TEST_CASE("pointwise evaluation") {
  const auto a = build_type1a(one(2), {{Rational(1, 2)}, {Rational(-1, 3)}});
  const double x[] = {4.0, -8.0};
  CHECK(std::abs(evaluate(a, x)(0, 0) - 2.0 * 2.0 * 0.5) < 1e-14);
  const auto b = build_type1b(one(1), std::vector<Rational>{1}, 2);
  const double y[] = {3.0, 4.0};
  CHECK(std::abs(evaluate(b, y)(0, 0) - 5.0) < 1e-14);
}

TEST_CASE("symbolic determinant and inverse") {
  const auto a = build_type1a(mat2(5, 3, 3, 2),
                              {{Rational(1, 2), Rational(-2, 3)}, {Rational(1, 4), 0}});
  const auto d = symbolic_det(a);
  CHECK(std::abs(d.coefficient - 1.0) < 1e-13);
  CHECK(d.exponents == std::vector<Rational>{Rational(-1, 6), Rational(1, 4)});
  const auto ia = inverse(a);
  const double x[] = {0.7, -2.0};
  CHECK(max_abs(evaluate(a, x) * evaluate(ia, x) - DenseMatrix::Identity(2, 2)) < 1e-10);

  const auto b = build_type1b(mat2(5, 3, 3, 2), std::vector<Rational>{Rational(3, 2), -1}, 3);
  CHECK(symbolic_det(b).exponent == Rational(1, 2));
  const auto ib = inverse(b);
  const double z[] = {0.3, 1.2, -0.5};
  CHECK(max_abs(evaluate(b, z) * evaluate(ib, z) - DenseMatrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("separable cube average") {
  const auto a = build_type1a(one(1), {{Rational(1, 2)}, {Rational(1, 2)}});
  const auto avg = average_type1a(a, Cube({0.0, 0.0}, 1.0));
  CHECK(std::abs(avg.matrix()(0, 0) - 4.0 / 9.0) < 1e-14);
}

TEST_CASE("radial cube average") {
  const auto b = build_type1b(one(1), std::vector<Rational>{1}, 2);
  const auto avg = average_type1b(b, Cube({0.0, 0.0}, 1.0), 1e-10);
  const double ref = (std::sqrt(2.0) + std::log(1.0 + std::sqrt(2.0))) / 3.0;
  CHECK(std::abs(avg.matrix()(0, 0).real() - ref) < 1e-8);
  const auto s = build_type1b(one(1), std::vector<Rational>{-1}, 2);
  const auto sv = average_type1b(s, Cube({-1.0, -1.0}, 2.0), 1e-8);
  // Over [-1,1]^2 the average of ||x||^-1 is 2 ln(1 + sqrt 2).
  CHECK(std::abs(sv.matrix()(0, 0).real() - 2.0 * std::log(1.0 + std::sqrt(2.0))) < 1e-6);
  const auto nonint = build_type1b(one(1), std::vector<Rational>{-2}, 2);
  CHECK_THROWS_AS(average_type1b(nonint, Cube({-1.0, -1.0}, 2.0), 1e-8), Error);
}

TEST_CASE("property: separable averages match 1D products and 2D quadrature") {
  for (int t = 0; t < 20; ++t) {
    Rng rng = make_rng(23, 1, t);
    const auto w = random_type1a(rng, 2, 2);
    const double lo0 = uniform(rng, 0.1, 3.0), lo1 = uniform(rng, 0.1, 3.0);
    const double side = std::pow(10.0, uniform(rng, -1, 0.5));
    const Cube q({lo0, lo1}, side);
    const DenseMatrix got = average_type1a(w, q).matrix();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double g0 = w.exponents()[0](i, j).to_double();
        const double g1 = w.exponents()[1](i, j).to_double();
        const cplx fub = w.coeff()(i, j) * pow_avg_1d(g0, lo0, lo0 + side) *
                         pow_avg_1d(g1, lo1, lo1 + side);
        CHECK(std::abs(got(i, j) - fub) <= 1e-12 * std::max(1.0, std::abs(fub)));
        const cplx brute = oracle::cube_average_2d(
            [&](double x, double y) {
              const double p[] = {x, y};
              return evaluate(w, p)(i, j);
            },
            lo0, lo1, side, 2);
        CHECK(std::abs(got(i, j) - brute) <= 1e-7 * std::max(1.0, std::abs(brute)));
      }
  }
}

TEST_CASE("property: radial averages match 2D quadrature away from the origin") {
  for (int t = 0; t < 10; ++t) {
    Rng rng = make_rng(23, 2, t);
    const auto w = random_type1b(rng, 2, 2);
    const double lo0 = uniform(rng, 0.1, 3.0), lo1 = uniform(rng, 0.1, 3.0);
    const double side = std::pow(10.0, uniform(rng, -1, 0.5));
    const Cube q({lo0, lo1}, side);
    const DenseMatrix got = average_type1b(w, q, 1e-10).matrix();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const cplx brute = oracle::cube_average_2d(
            [&](double x, double y) {
              const double p[] = {x, y};
              return evaluate(w, p)(i, j);
            },
            lo0, lo1, side, 2);
        CHECK(std::abs(got(i, j) - brute) <= 1e-8 * std::max(1.0, std::abs(brute)));
      }
  }
}

TEST_CASE("property: coordinate permutation symmetry and dilation") {
  for (int t = 0; t < 20; ++t) {
    Rng rng = make_rng(23, 3, t);
    const auto w = random_type1a(rng, 2, 2);
    const Type1aWeight swapped(w.coeff(), {w.exponents()[1], w.exponents()[0]});
    const double lo0 = uniform(rng, -2, 1), lo1 = uniform(rng, -2, 1);
    const double side = uniform(rng, 0.5, 3);
    const DenseMatrix a = average_type1a(w, Cube({lo0, lo1}, side)).matrix();
    const DenseMatrix b = average_type1a(swapped, Cube({lo1, lo0}, side)).matrix();
    CHECK(max_abs(a - b) <= 1e-12 * max_abs(a));
  }
  for (int t = 0; t < 10; ++t) {
    Rng rng = make_rng(23, 4, t);
    const Rational g = random_exponent(rng) * Rational(2);
    const auto w = build_type1b(one(1), std::vector<Rational>{g}, 2);
    const double lam = std::pow(10.0, uniform(rng, -2, 2));
    const double base = average_type1b(w, Cube({-0.5, -0.25}, 1.0), 1e-10).matrix()(0, 0).real();
    const double scaled =
        average_type1b(w, Cube({-0.5 * lam, -0.25 * lam}, lam), 1e-10).matrix()(0, 0).real();
    CHECK(std::abs(scaled - std::pow(lam, g.to_double()) * base) <=
          1e-7 * std::abs(scaled));
  }
}

TEST_CASE("cube searches") {
  const auto a = build_type1a(one(1), {{Rational(1, 2)}, {Rational(1, 2)}});
  const auto cfg = SupSearchConfig::log_grid(1e-3, 1e3, 13, 5);
  const auto c = estimate_a2_cubes(a, Functional::trace, cfg, CubeFamily::origin_cornered);
  CHECK(std::abs(c.estimate - 16.0 / 9.0) < 1e-12);
  CHECK(c.argmax.lower() == std::vector<double>{0.0, 0.0});
  const auto all = estimate_a2_cubes(a, Functional::trace, cfg);
  CHECK(all.estimate >= c.estimate);
  const double k = power_a2_constant(0.5);
  CHECK(all.estimate <= k * k * (1 + 1e-9));
  const auto bad = build_type1a(one(1), {{Rational(1)}, {Rational(0)}});
  CHECK_THROWS_AS(estimate_a2_cubes(bad, Functional::trace, cfg), Error);
}
