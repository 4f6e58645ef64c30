#include <doctest.h>

#include <cmath>

#include "a2w/error.hpp"
#include "a2w/estimator.hpp"
#include "a2w/random_weights.hpp"
#include "a2w/scalar_power.hpp"

using namespace a2w;

namespace {

DenseMatrix mat2(double a, double b, double c, double d) {
  DenseMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

SymbolicPowerMatrix example2() {
  return build_type1(mat2(5, 3, 3, 2), std::vector<Rational>{Rational(1, 2), Rational(-2, 3)});
}

Interval random_interval(Rng& rng) {
  const double c = uniform(rng, -1.0, 1.0) * std::pow(10.0, uniform(rng, -3, 3));
  const double h = std::pow(10.0, uniform(rng, -3, 3));
  return Interval::from_center(c, h);
}

DenseMatrix random_unitary(Rng& rng, int n) {
  DenseMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return z.householderQr().householderQ();
}

}  // namespace

TEST_CASE("interval averages of a power matrix") {
  const auto a = average_symbolic(example2(), Interval(0, 1)).matrix();
  CHECK(std::abs(a(0, 0) - 10.0 / 3.0) < 1e-13);
  CHECK(std::abs(a(0, 1) - 36.0 / 11.0) < 1e-13);
  CHECK(std::abs(a(1, 1) - 6.0) < 1e-13);
  const auto b = average_symbolic(example2(), Interval(-1, 1)).matrix();
  CHECK(max_abs(a - b) < 1e-13);
  const auto c = average_symbolic(example2(), Interval(1, 2)).matrix();
  CHECK(std::abs(c(0, 0) - 5.0 * (std::pow(2.0, 1.5) - 1.0) / 1.5) < 1e-13);
}

TEST_CASE("non-integrable entry reports its index") {
  const auto w = build_type1(mat2(1, 0, 0, 1), std::vector<Rational>{Rational(-3, 2), 0});
  try {
    average_symbolic(w, Interval(-1, 1));
    FAIL("expected non_integrable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_integrable);
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
}

TEST_CASE("trace and norm functionals") {
  const auto a = Hermitian::from(mat2(4, 0, 0, 1));
  const auto b = Hermitian::from(mat2(1, 0, 0, 4));
  CHECK(std::abs(a2_functional_trace(a, b) - 8.0) < 1e-13);
  CHECK(std::abs(a2_functional_norm(a, b) - 4.0) < 1e-12);
  const auto i = Hermitian::from(DenseMatrix::Identity(3, 3));
  CHECK(std::abs(a2_functional_trace(i, i) - 3.0) < 1e-14);
  CHECK(std::abs(a2_functional_norm(i, i) - 1.0) < 1e-14);
  CHECK_THROWS_AS(a2_functional_trace(Hermitian::from(mat2(1, 2, 2, 1)), a), Error);
}

TEST_CASE("property: sandwich and lower bounds") {
  for (int t = 0; t < 200; ++t) {
    Rng rng = make_rng(17, 1, t);
    const int n = 1 + t % 4;
    const auto w = random_type1_a2(rng, n);
    const auto winv = symbolic_inverse(w);
    const Interval I = random_interval(rng);
    const auto a = average_symbolic(w, I), b = average_symbolic(winv, I);
    const double tr = a2_functional_trace(a, b), nm = a2_functional_norm(a, b);
    CHECK(nm >= 1.0 - 1e-9);
    CHECK(tr >= n - 1e-9 * n);
    CHECK(nm <= tr * (1 + 1e-9));
    CHECK(tr <= n * nm * (1 + 1e-9));
    CHECK(tr <= a2_upper_bound(w) * (1 + 1e-9));
  }
}

TEST_CASE("property: unitary, scaling and dilation invariance") {
  for (int t = 0; t < 100; ++t) {
    Rng rng = make_rng(17, 2, t);
    const int n = 2 + t % 3;
    const auto w = random_type1_a2(rng, n);
    const auto winv = symbolic_inverse(w);
    const Interval I = random_interval(rng);
    const auto a = average_symbolic(w, I), b = average_symbolic(winv, I);
    const DenseMatrix u = random_unitary(rng, n);
    const auto ua = Hermitian::symmetrize(u * a.matrix() * u.adjoint());
    const auto ub = Hermitian::symmetrize(u * b.matrix() * u.adjoint());
    for (Functional f : {Functional::trace, Functional::norm}) {
      const double v = a2_functional(f, a, b);
      CHECK(std::abs(a2_functional(f, ua, ub) - v) <= 1e-9 * v);
      const double c = random_point(rng, 0.01, 100.0);
      const double ca = std::abs(c);
      const auto ws = w.scaled(ca);
      CHECK(std::abs(functional_on(ws, symbolic_inverse(ws), f, I) - v) <= 1e-9 * v);
      const double lam = random_point(rng, 0.01, 100.0);
      const Interval J = lam > 0 ? Interval(lam * I.a(), lam * I.b())
                                 : Interval(lam * I.b(), lam * I.a());
      CHECK(std::abs(functional_on(w, winv, f, J) - v) <= 1e-8 * v);
    }
  }
}

TEST_CASE("sup search stays below the upper bound") {
  const auto w = example2();
  const double bound = a2_upper_bound(w);
  double worst = 0.0;
  const auto r = estimate_a2(w, Functional::trace, SupSearchConfig::standard(),
                             [&](const Interval&, double v) { worst = std::max(worst, v); });
  CHECK(r.estimate <= bound);
  CHECK(worst <= bound * (1 + 1e-9));
  CHECK(r.estimate >= 2.0);
  CHECK(std::abs(functional_on(w, symbolic_inverse(w), Functional::trace, r.argmax) -
                 r.estimate) <= 1e-12 * r.estimate);
  const auto n = estimate_a2(w, Functional::norm, SupSearchConfig::standard());
  CHECK(n.estimate <= r.estimate * (1 + 1e-9));
  CHECK(r.estimate <= 2 * n.estimate * (1 + 1e-9));
}

TEST_CASE("scalar case reduces to the scalar constant") {
  DenseMatrix a(1, 1);
  a(0, 0) = 3.0;
  const auto w = build_type1(a, std::vector<Rational>{Rational(1, 2)});
  const auto r = estimate_a2(w, Functional::trace, SupSearchConfig::standard());
  CHECK(std::abs(r.estimate - power_a2_constant(0.5)) <= 1e-6);
}

TEST_CASE("estimation requires an A2 weight") {
  const auto w = build_type1(mat2(5, 3, 3, 2), std::vector<Rational>{1, 0});
  try {
    estimate_a2(w, Functional::trace, SupSearchConfig::standard());
    FAIL("expected precondition_violated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_violated);
  }
}

TEST_CASE("type 2 functional via quadrature") {
  const Type2Weight w({1.0, 2.0}, {Rational(1, 2), Rational(1, 2)}, UnitaryFamily::rotation2d);
  const double v = functional_on(w, Functional::trace, Interval(1.0, 3.0), 1e-10);
  CHECK(v >= 2.0 - 1e-9);
  const Type2Weight d({1.0, 1.0}, {Rational(1, 2), Rational(-1, 2)}, UnitaryFamily::identity);
  const double e = functional_on(d, Functional::trace, Interval(0.0, 1.0), 1e-10);
  CHECK(std::abs(e - 2.0 * 4.0 / 3.0) < 1e-7);
}
