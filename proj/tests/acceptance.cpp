// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   a2w_acceptance <path-to-a2w> <spec-dir> <scratch-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "a2w/estimator.hpp"
#include "a2w/random_weights.hpp"
#include "a2w/scalar_power.hpp"
#include "a2w/type1.hpp"
#include "a2w/type2.hpp"
#include "a2w/multivar.hpp"
#include "oracles.hpp"

using namespace a2w;
using nlohmann::json;

namespace {

// Tolerances and limits, one per criterion.
constexpr double kC1MaxSeconds = 0.1;
constexpr double kC2WitnessRel = 1e-12;
constexpr double kC3DetRel = 1e-9;
constexpr double kC3InvRel = 1e-8;
constexpr double kC3MaxSeconds = 5.0;
constexpr double kC4Lo = 4.0 / 3.0 * 0.99;
constexpr double kC4Hi = 4.0 / 3.0;
constexpr double kC4EndpointFactor = 1e-3;
constexpr double kC5Rel = 1e-9;
constexpr double kC6MinSlope = 0.24;
constexpr double kC6ControlMax = 8.0 / 3.0 + 1e-6;
constexpr double kC6MaxSeconds = 10.0;
constexpr double kC7Trace = 1e-10;
constexpr double kC7Unitary = 1e-12;
constexpr double kC7Eigen = 1e-9;
constexpr double kC8Rel = 1e-9;
constexpr double kC9Exact = 1e-12;
constexpr double kC9Brute = 1e-7;
constexpr double kC9Radial = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Proc {
  int code;
  std::string out;
};

Proc run(const std::string& cmd) {
  Proc p{-1, {}};
  FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  const int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

struct Context {
  std::string cli;
  std::string specs;
  std::string scratch;
};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Outcome criterion1(const Context& c) {
  std::string detail;
  bool ok = true;
  const auto t2 = Clock::now();
  const Proc a = run(quote(c.cli) + " check " + quote(c.specs + "/weight_2x2.json") + " --json");
  const double s2 = seconds_since(t2);
  const auto t3 = Clock::now();
  const Proc b = run(quote(c.cli) + " check " + quote(c.specs + "/weight_3x3.json") + " --json");
  const double s3 = seconds_since(t3);
  try {
    const json ja = json::parse(a.out), jb = json::parse(b.out);
    ok &= a.code == 0 && b.code == 0;
    ok &= ja["report"]["verdict"] == "a2" && jb["report"]["verdict"] == "a2";
    ok &= ja["derived"]["exponents"][0][1] == "-1/12" &&
          ja["derived"]["exponents"][1][0] == "-1/12";
    ok &= jb["derived"]["exponents"][0][1] == "0" &&
          jb["derived"]["exponents"][0][2] == "5/8" &&
          jb["derived"]["exponents"][1][2] == "-1/8";
  } catch (const std::exception& e) {
    return {false, std::string("bad CLI output: ") + e.what()};
  }
  ok &= s2 < kC1MaxSeconds && s3 < kC1MaxSeconds;
  detail = "2x2 " + fmt(s2) + " s, 3x3 " + fmt(s3) + " s";
  return {ok, detail};
}

DenseMatrix mat2(double a, double b, double c, double d) {
  DenseMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Outcome criterion2(const Context&) {
  ExponentMatrix e(2);
  e(0, 0) = Rational(1, 2);
  e(1, 1) = Rational(-2, 3);
  e(0, 1) = e(1, 0) = Rational(-1, 12) + Rational(1, 10);
  const auto w = build_type1_raw(mat2(5, 3, 3, 2), e);
  const A2Report r = check_positive_definite_ae(w);
  bool ok = r.verdict == Verdict::not_positive_definite_ae && r.witness.has_value();
  std::string detail;
  if (r.witness) {
    const DenseMatrix wx = evaluate(w, *r.witness);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(wx);
    const double lo = es.eigenvalues()(0);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    ok &= lo < -kC2WitnessRel * norm;
    detail = "witness x = " + fmt(*r.witness) + ", min eig " + fmt(lo);
  }
  const auto out = build_type1(mat2(5, 3, 3, 2), std::vector<Rational>{1, Rational(-2, 3)});
  const A2Report q = check_a2(out);
  ok &= q.verdict == Verdict::not_a2 &&
        q.has_reason(FindingKind::diagonal_exponent_out_of_range);
  return {ok, detail};
}

Outcome criterion3(const Context&) {
  const auto t = Clock::now();
  double worst_det = 0.0, worst_inv = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(2024, 3, k);
    const int n = 2 + k % 3;
    const auto w = random_type1_a2(rng, n);
    const PowerTerm d = symbolic_det(w);
    const auto inv = symbolic_inverse(w);
    for (int p = 0; p < 40; ++p) {
      const double x = random_point(rng);
      const DenseMatrix wx = evaluate(w, x);
      const cplx ref_det = wx.partialPivLu().determinant();
      const cplx det = d.coefficient * std::pow(std::abs(x), d.exponent.to_double());
      worst_det = std::max(worst_det, std::abs(det - ref_det) / std::abs(ref_det));
      const DenseMatrix ref_inv = wx.inverse();
      worst_inv = std::max(worst_inv, max_abs(evaluate(inv, x) - ref_inv) / max_abs(ref_inv));
    }
  }
  const double s = seconds_since(t);
  return {worst_det <= kC3DetRel && worst_inv <= kC3InvRel && s < kC3MaxSeconds,
          "det rel " + fmt(worst_det) + ", inverse rel " + fmt(worst_inv) + ", " + fmt(s) +
              " s"};
}

Outcome criterion4(const Context&) {
  const auto r = scalar_a2_constant_estimate(ScalarPowerWeight(1.0, Rational(1, 2)),
                                             SupSearchConfig::standard());
  const double h = r.argmax.halflength();
  const double near = std::min(std::abs(r.argmax.a()), std::abs(r.argmax.b()));
  const bool in_range = r.estimate >= kC4Lo && r.estimate <= kC4Hi;
  const bool endpoint = near <= kC4EndpointFactor * h;
  const double oracle_value = oracle::scalar_constant(0.5);
  return {in_range && endpoint,
          "estimate " + fmt(r.estimate) + " on [" + fmt(r.argmax.a()) + ", " +
              fmt(r.argmax.b()) + "], near endpoint/h " + fmt(near / h) +
              "; brute-force sup " + fmt(oracle_value)};
}

Outcome criterion5(const Context&) {
  double worst = 0.0;
  std::size_t evaluated = 0;
  for (int k = 0; k < 50; ++k) {
    Rng rng = make_rng(2024, 5, k);
    const auto w = random_type1_a2(rng, 2 + k % 3);
    const double bound = a2_upper_bound(w);
    estimate_a2(w, Functional::trace, SupSearchConfig::standard(),
                [&](const Interval&, double v) {
                  ++evaluated;
                  worst = std::max(worst, v / bound);
                });
  }
  return {worst <= 1.0 + kC5Rel,
          "max value/bound " + fmt(worst) + " over " + std::to_string(evaluated) +
              " intervals"};
}

Outcome criterion6(const Context& c) {
  const auto t = Clock::now();
  const std::string path = c.scratch + "/acceptance_divergence.csv";
  const Proc p = run(quote(c.cli) +
                     " divergence --gamma1 0 --gamma2 1/2 --n-min 100 --n-max 100000"
                     " --points 13 --out " + quote(path));
  if (p.code != 0) return {false, "divergence exited " + std::to_string(p.code)};
  std::istringstream csv(slurp(path));
  std::string line;
  std::getline(csv, line);
  std::vector<double> ns, products;
  std::vector<long> idx;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() != 6) return {false, "malformed CSV row"};
    ns.push_back(cells[0]);
    idx.push_back(static_cast<long>(cells[0]));
    products.push_back(cells[5]);
  }
  if (ns.size() != 13) return {false, "expected 13 rows"};
  const double slope = oracle::loglog_slope(ns, products);
  bool increasing = true;
  for (std::size_t k = 1; k < products.size(); ++k)
    if (ns[k] >= 100.0 && !(products[k] > products[k - 1])) increasing = false;

  const Type2Weight control({1.0, 1.0}, {Rational(1, 2), Rational(1, 2)},
                            UnitaryFamily::rotation2d);
  double control_max = 0.0;
  for (long n : idx) {
    control_max = std::max(control_max, functional_on(control, Functional::trace,
                                                      rotation_test_interval(n), 1e-10));
  }
  const double s = seconds_since(t);
  return {slope >= kC6MinSlope && increasing && control_max <= kC6ControlMax &&
              s < kC6MaxSeconds,
          "slope " + fmt(slope) + ", increasing " + (increasing ? "yes" : "no") +
              ", control max " + fmt(control_max) + ", " + fmt(s) + " s"};
}

Outcome criterion7(const Context&) {
  double trace_err = 0.0, unit_err = 0.0, eig_err = 0.0;
  for (UnitaryFamily family : {UnitaryFamily::rotation2d, UnitaryFamily::rotation3d_euler}) {
    for (int k = 0; k < 100; ++k) {
      Rng rng = make_rng(2024, 7, 2 * k + (family == UnitaryFamily::rotation2d ? 0 : 1));
      const auto w = random_type2(rng, family);
      const int n = w.dim();
      const double x = random_point(rng);
      const Eigen::MatrixXd u = unitary_matrix(family, n, x);
      unit_err = std::max(unit_err,
                          (u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
      const DenseMatrix m = evaluate_type2(w, x).matrix();
      std::vector<double> lam;
      double tr = 0.0;
      for (int i = 0; i < n; ++i) {
        lam.push_back(w.alphas()[i] * std::pow(std::abs(x), w.gammas()[i].to_double()));
        tr += lam.back();
      }
      trace_err = std::max(trace_err, std::abs(m.trace().real() - tr) / std::max(1.0, tr));
      std::sort(lam.begin(), lam.end());
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
      for (int i = 0; i < n; ++i)
        eig_err = std::max(eig_err, std::abs(es.eigenvalues()(i) - lam[i]) /
                                        std::max(1.0, lam.back()));
    }
  }
  return {trace_err <= kC7Trace && unit_err <= kC7Unitary && eig_err <= kC7Eigen,
          "trace " + fmt(trace_err) + ", unitarity " + fmt(unit_err) + ", eigenvalues " +
              fmt(eig_err)};
}

Outcome criterion8(const Context&) {
  double worst = 0.0;
  int violations = 0;
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(2024, 8, k);
    const double center = uniform(rng, -1, 1) * std::pow(10.0, uniform(rng, -3, 3));
    const Interval I = Interval::from_center(center, std::pow(10.0, uniform(rng, -3, 3)));
    Hermitian a, b;
    int n;
    if (k % 5 == 4) {
      const auto w = random_type2(rng, k % 2 ? UnitaryFamily::rotation2d
                                             : UnitaryFamily::rotation3d_euler);
      n = w.dim();
      a = average_numeric(matrix_integrand(w), I, 1e-11);
      b = average_numeric(matrix_integrand(w.inverse()), I, 1e-11);
    } else {
      n = 1 + k % 4;
      const auto w = random_type1_a2(rng, n);
      a = average_symbolic(w, I);
      b = average_symbolic(symbolic_inverse(w), I);
    }
    const double tr = a2_functional_trace(a, b);
    const double nm = a2_functional_norm(a, b);
    const double e = std::max({(nm - tr) / tr, (tr - n * nm) / tr, 1.0 - nm,
                               (n - tr) / n});
    worst = std::max(worst, e);
    if (e > kC8Rel) ++violations;
  }
  return {violations == 0,
          std::to_string(violations) + " violations, worst relative excess " + fmt(worst)};
}

double pow_avg_1d(double g, double a, double b) {
  return oracle::integral_abs_pow(g, a, b) / (b - a);
}

Outcome criterion9(const Context&) {
  double exact = 0.0, brute = 0.0;
  for (int k = 0; k < 20; ++k) {
    Rng rng = make_rng(2024, 9, k);
    const auto w = random_type1a(rng, 2, 2);
    const double lo0 = uniform(rng, -3, 3), lo1 = uniform(rng, -3, 3);
    const double side = std::pow(10.0, uniform(rng, -1, 0.5));
    const DenseMatrix got = average_type1a(w, Cube({lo0, lo1}, side)).matrix();
    const bool origin_free = (lo0 > 0 || lo0 + side < 0) && (lo1 > 0 || lo1 + side < 0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double g0 = w.exponents()[0](i, j).to_double();
        const double g1 = w.exponents()[1](i, j).to_double();
        const cplx fub = w.coeff()(i, j) * pow_avg_1d(g0, lo0, lo0 + side) *
                         pow_avg_1d(g1, lo1, lo1 + side);
        exact = std::max(exact, std::abs(got(i, j) - fub) / std::max(1.0, std::abs(fub)));
        if (!origin_free) continue;
        const cplx ref = oracle::cube_average_2d(
            [&](double x, double y) {
              const double p[] = {x, y};
              return evaluate(w, p)(i, j);
            },
            lo0, lo1, side, 6);
        brute = std::max(brute, std::abs(got(i, j) - ref) / std::max(1.0, std::abs(ref)));
      }
  }
  DenseMatrix one(1, 1);
  one(0, 0) = 1.0;
  const auto r = build_type1b(one, std::vector<Rational>{1}, 2);
  const double radial = average_type1b(r, Cube({0.0, 0.0}, 1.0), 1e-10).matrix()(0, 0).real();
  const double radial_err =
      std::abs(radial - (std::sqrt(2.0) + std::log(1.0 + std::sqrt(2.0))) / 3.0);
  const bool accept =
      check_a2_type1b(build_type1b(one, std::vector<Rational>{Rational(3, 2)}, 2)).verdict ==
      Verdict::a2;
  const bool reject =
      check_a2_type1b(build_type1b(one, std::vector<Rational>{2}, 2)).verdict == Verdict::not_a2;
  return {exact <= kC9Exact && brute <= kC9Brute && radial_err <= kC9Radial && accept && reject,
          "1D product " + fmt(exact) + ", brute " + fmt(brute) + ", radial " + fmt(radial_err) +
              ", 3/2 " + (accept ? "accepted" : "rejected") + ", 2 " +
              (reject ? "rejected" : "accepted")};
}

Outcome criterion10(const Context& c) {
  const std::string constant =
      quote(c.cli) + " constant " + quote(c.specs + "/weight_2x2.json") + " --json";
  const Proc a = run(constant), b = run("A2W_THREADS=1 " + constant);
  const std::string p1 = c.scratch + "/acceptance_det_1.csv";
  const std::string p2 = c.scratch + "/acceptance_det_2.csv";
  const std::string div = quote(c.cli) +
                          " divergence --gamma1 0 --gamma2 1/2 --n-min 10 --n-max 10000"
                          " --points 7 --out ";
  const Proc d1 = run(div + quote(p1)), d2 = run("A2W_THREADS=1 " + div + quote(p2));
  const std::string c1 = slurp(p1), c2 = slurp(p2);
  const bool ok = a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out &&
                  d1.code == 0 && d2.code == 0 && !c1.empty() && c1 == c2;
  return {ok, std::string("JSON ") + (a.out == b.out ? "identical" : "differs") + ", CSV " +
                  (c1 == c2 ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: a2w_acceptance <a2w> <spec-dir> <scratch-dir>\n";
    return 2;
  }
  const Context ctx{argv[1], argv[2], argv[3]};
  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria = {
      {"C1 example reproduction", criterion1},
      {"C2 characterization sharpness", criterion2},
      {"C3 symbolic vs LU oracles", criterion3},
      {"C4 scalar constant gamma=1/2", criterion4},
      {"C5 trace bound consistency", criterion5},
      {"C6 rotation divergence", criterion6},
      {"C7 type 2 structure", criterion7},
      {"C8 sandwich", criterion8},
      {"C9 multivariable", criterion9},
      {"C10 determinism", criterion10},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
