#include "a2w/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "a2w/estimator.hpp"
#include "a2w/multivar.hpp"
#include "a2w/scalar_power.hpp"
#include "a2w/type1.hpp"
#include "a2w/type2.hpp"
#include "a2w/verify.hpp"
#include "a2w/weight_spec.hpp"

namespace a2w {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json exponents_json(const ExponentMatrix& e) {
  json rows = json::array();
  for (int i = 0; i < e.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < e.dim(); ++j) row.push_back(e(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

void print_exponents(std::ostream& out, const ExponentMatrix& e,
                     const std::string& label) {
  out << label << ":\n";
  for (int i = 0; i < e.dim(); ++i) {
    out << " ";
    for (int j = 0; j < e.dim(); ++j) out << ' ' << std::setw(7) << e(i, j).to_string();
    out << '\n';
  }
}

json report_json(const A2Report& r) {
  json reasons = json::array();
  for (const auto& f : r.reasons) {
    reasons.push_back({{"kind", std::string(to_string(f.kind))},
                       {"indices", f.indices},
                       {"coordinate", f.coordinate},
                       {"message", f.message}});
  }
  json j = {{"verdict", std::string(to_string(r.verdict))}, {"reasons", reasons}};
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return j;
}

std::string a2_line(const A2Report& r) {
  switch (r.verdict) {
    case Verdict::a2:
      return "A2: yes";
    case Verdict::not_a2:
    case Verdict::not_positive_definite_ae:
    case Verdict::not_locally_integrable: {
      std::string line = "A2: no";
      if (!r.reasons.empty()) line += " (" + r.reasons.front().message + ")";
      return line;
    }
    default:
      return "A2: undetermined";
  }
}

A2Report scalar_report(const ScalarPowerWeight& w) {
  A2Report r;
  if (!(w.coeff() > 0.0)) {
    r.reasons.push_back({FindingKind::non_positive_alpha, {}, 0,
                         "coefficient is not positive"});
  }
  if (!scalar_is_a2(w.exponent())) {
    r.reasons.push_back({FindingKind::exponent_out_of_range, {}, 0,
                         "exponent " + w.exponent().to_string() +
                             " is outside (-1, 1)"});
  }
  r.verdict = r.reasons.empty() ? Verdict::a2 : Verdict::not_a2;
  return r;
}

struct Decision {
  A2Report report;
  json derived = json::object();
};

Decision decide(const Weight& weight, std::ostream* text) {
  return std::visit(
      Overloaded{
          [&](const ScalarPowerWeight& w) {
            return Decision{scalar_report(w)};
          },
          [&](const SymbolicPowerMatrix& w) {
            Decision d{check_a2(w)};
            const ExponentMatrix e = w.normalized_exponents();
            d.derived["exponents"] = exponents_json(e);
            if (text) print_exponents(*text, e, "exponents");
            return d;
          },
          [&](const Type2Weight& w) { return Decision{decide_a2(w)}; },
          [&](const Type1aWeight& w) {
            Decision d{check_a2_type1a(w)};
            json per = json::array();
            for (int c = 0; c < w.ambient_dim(); ++c) {
              per.push_back(exponents_json(w.exponents()[c]));
              if (text) {
                print_exponents(*text, w.exponents()[c],
                                "exponents (coordinate " + std::to_string(c + 1) + ")");
              }
            }
            d.derived["coordinate_exponents"] = per;
            return d;
          },
          [&](const Type1bWeight& w) {
            Decision d{check_a2_type1b(w)};
            d.derived["exponents"] = exponents_json(w.exponents());
            if (text) print_exponents(*text, w.exponents(), "exponents");
            return d;
          },
      },
      weight);
}

int weight_dim(const Weight& weight) {
  return std::visit(Overloaded{[](const ScalarPowerWeight&) { return 1; },
                               [](const auto& w) { return w.dim(); }},
                    weight);
}

bool uses_quadrature(const Weight& weight) {
  return std::holds_alternative<Type2Weight>(weight) ||
         std::holds_alternative<Type1bWeight>(weight);
}

struct GridPlan {
  double lo;
  double hi;
  int points;
  int rounds;
  double quadrature_tol;

  SupSearchConfig at_level(int level) const {
    const int p = (points - 1) * (1 << level) + 1;
    return SupSearchConfig::log_grid(lo, hi, p, rounds, quadrature_tol);
  }
  json to_json(int level) const {
    return {{"lo", lo},
            {"hi", hi},
            {"points", (points - 1) * (1 << level) + 1},
            {"refine_rounds", rounds},
            {"quadrature_tol", quadrature_tol}};
  }
};

GridPlan grid_plan(const std::string& grid, bool quadrature) {
  const bool fine = grid == "fine";
  if (quadrature) return fine ? GridPlan{1e-3, 1e3, 25, 10, 1e-9}
                              : GridPlan{1e-3, 1e3, 13, 5, 1e-9};
  return fine ? GridPlan{1e-6, 1e6, 49, 20, 1e-10}
              : GridPlan{1e-6, 1e6, 25, 10, 1e-10};
}

struct Estimate {
  double value;
  json argmax;
  std::size_t evaluations;
  std::optional<double> upper_bound;
  std::optional<double> closed_form;
};

json interval_json(const Interval& I) { return {{"a", I.a()}, {"b", I.b()}}; }
json cube_json(const Cube& q) { return {{"lower", q.lower()}, {"side", q.side()}}; }

Estimate run_estimate(const Weight& weight, Functional f,
                      const SupSearchConfig& cfg) {
  return std::visit(
      Overloaded{
          [&](const ScalarPowerWeight& w) {
            const auto r = scalar_a2_constant_estimate(w, cfg);
            return Estimate{r.estimate, interval_json(r.argmax), r.evaluations,
                            std::nullopt,
                            power_a2_constant(w.exponent().to_double())};
          },
          [&](const SymbolicPowerMatrix& w) {
            const auto r = estimate_a2(w, f, cfg);
            return Estimate{r.estimate, interval_json(r.argmax), r.evaluations,
                            a2_upper_bound(w), std::nullopt};
          },
          [&](const Type2Weight& w) {
            const auto r = estimate_a2(w, f, cfg);
            return Estimate{r.estimate, interval_json(r.argmax), r.evaluations,
                            std::nullopt, std::nullopt};
          },
          [&](const Type1aWeight& w) {
            const auto r = estimate_a2_cubes(w, f, cfg);
            return Estimate{r.estimate, cube_json(r.argmax), r.evaluations,
                            std::nullopt, std::nullopt};
          },
          [&](const Type1bWeight& w) {
            const auto r = estimate_a2_cubes(w, f, cfg);
            return Estimate{r.estimate, cube_json(r.argmax), r.evaluations,
                            std::nullopt, std::nullopt};
          },
      },
      weight);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int cmd_check(const std::string& path, bool as_json, std::ostream& out,
              std::ostream& err) {
  std::optional<WeightSpec> loaded;
  try {
    loaded = load_weight_spec(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const WeightSpec& spec = *loaded;
  std::ostringstream text;
  const Decision d = decide(spec.weight, as_json ? nullptr : &text);
  if (as_json) {
    json j = {{"tool", "a2w"},
              {"version", kVersion},
              {"command", "check"},
              {"spec", path},
              {"kind", spec.kind},
              {"n", weight_dim(spec.weight)}};
    j["report"] = report_json(d.report);
    j["derived"] = d.derived;
    j["a2"] = a2_line(d.report);
    out << j.dump(2) << '\n';
    return exit_ok;
  }
  out << "a2w " << kVersion << " check " << path << '\n';
  out << "kind: " << spec.kind << " (n = " << weight_dim(spec.weight) << ")\n";
  out << text.str();
  out << d.report.describe();
  out << a2_line(d.report) << '\n';
  return exit_ok;
}

int cmd_constant(const std::string& path, const std::string& functional,
                 const std::string& grid, bool as_json, int certify,
                 std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::optional<WeightSpec> loaded;
  Functional f = Functional::trace;
  try {
    loaded = load_weight_spec(path);
    f = parse_functional(functional);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const WeightSpec& spec = *loaded;
  const Decision d = decide(spec.weight, nullptr);
  if (d.report.verdict != Verdict::a2) {
    err << "error: weight does not pass its A2 decision\n" << d.report.describe();
    return exit_decision_failed;
  }
  const GridPlan plan = grid_plan(grid, uses_quadrature(spec.weight));
  const int levels = std::max(certify, 1);
  std::vector<Estimate> results;
  try {
    for (int level = 0; level < levels; ++level) {
      results.push_back(run_estimate(spec.weight, f, plan.at_level(level)));
    }
  } catch (const Error& e) {
    err << "error: search failed: " << e.what() << '\n';
    return exit_search_failed;
  }
  const Estimate& best = results.back();
  std::optional<bool> saturated;
  if (results.size() > 1) {
    const double prev = results[results.size() - 2].value;
    saturated = std::abs(best.value - prev) < 1e-3 * std::abs(best.value);
  }

  if (as_json) {
    json levels_json = json::array();
    for (std::size_t k = 0; k < results.size(); ++k) {
      levels_json.push_back({{"grid", plan.to_json(static_cast<int>(k))},
                             {"estimate", results[k].value}});
    }
    json j = {{"tool", "a2w"},
              {"version", kVersion},
              {"command", "constant"},
              {"spec", path},
              {"kind", spec.kind},
              {"config",
               {{"functional", std::string(to_string(f))},
                {"grid", grid},
                {"search", plan.to_json(levels - 1)},
                {"certify_grid", certify}}},
              {"result",
               {{"estimate", best.value},
                {"argmax", best.argmax},
                {"evaluations", best.evaluations},
                {"functional", std::string(to_string(f))},
                {"lower_bound_only", true}}}};
    j["upper_bound"] = best.upper_bound ? json(*best.upper_bound) : json(nullptr);
    j["closed_form"] = best.closed_form ? json(*best.closed_form) : json(nullptr);
    if (certify > 0) {
      j["certify"] = {{"levels", levels_json}};
      j["certify"]["saturated"] = saturated ? json(*saturated) : json(nullptr);
    }
    out << j.dump(2) << '\n';
    err << "wall time: " << num(seconds_since(start)) << " s\n";
    return exit_ok;
  }

  out << "a2w " << kVersion << " constant " << path << '\n';
  out << "kind: " << spec.kind << ", functional: " << to_string(f)
      << ", grid: " << grid << '\n';
  out << "estimate (lower bound): " << num(best.value) << '\n';
  out << "argmax: " << best.argmax.dump() << '\n';
  out << "evaluations: " << best.evaluations << '\n';
  if (best.upper_bound) out << "upper bound: " << num(*best.upper_bound) << '\n';
  if (best.closed_form) out << "closed-form constant: " << num(*best.closed_form) << '\n';
  if (results.size() > 1) {
    for (std::size_t k = 0; k < results.size(); ++k) {
      out << "grid level " << k << " (" << plan.at_level(static_cast<int>(k))
                                               .halflength_grid.size()
          << " points): " << num(results[k].value) << '\n';
    }
    out << "search saturated: " << (*saturated ? "yes" : "no") << '\n';
  }
  out << "wall time: " << num(seconds_since(start)) << " s\n";
  return exit_ok;
}

std::string csv_line(const DivergenceRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g", r.n_index,
                r.a, r.b, r.avg_w, r.avg_winv, r.product);
  return buf;
}

int cmd_divergence(const std::string& g1_text, const std::string& g2_text,
                   double n_min, double n_max, int points,
                   const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  const auto start = Clock::now();
  std::vector<DivergenceRow> rows;
  Rational g1, g2;
  try {
    g1 = Rational::parse(g1_text);
    g2 = Rational::parse(g2_text);
    if (!(n_min >= 1.0 && n_max >= n_min && n_max < 1e15)) {
      throw Error(ErrorCode::invalid_argument, "need 1 <= n-min <= n-max");
    }
    const auto ns = log_spaced_indices(std::lround(n_min), std::lround(n_max), points);
    if (ns.size() < 2) {
      throw Error(ErrorCode::invalid_argument, "need at least two distinct n");
    }
    if (!(Rational(-1) < g1 && g1 < g2 && g2 < Rational(1))) {
      throw Error(ErrorCode::invalid_argument,
                  "need -1 < gamma1 < gamma2 < 1");
    }
    rows = divergence_experiment(g1, g2, ns);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool input = e.code() == ErrorCode::parse_error ||
                       e.code() == ErrorCode::invalid_argument;
    return input ? exit_usage : exit_search_failed;
  }
  std::ostringstream csv;
  csv << "n,a,b,avg_w,avg_winv,product\n";
  for (const auto& r : rows) csv << csv_line(r) << '\n';
  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return exit_usage;
    }
    file << csv.str();
    out << "a2w " << kVersion << " divergence gamma1=" << g1 << " gamma2=" << g2
        << '\n';
    for (const auto& r : rows) {
      out << "  n = " << std::setw(7) << r.n_index << "  product = " << num(r.product)
          << '\n';
    }
    out << "wrote " << rows.size() << " rows to " << out_path << '\n';
  }
  std::ostream& note = out_path.empty() ? err : out;
  note << "fitted log-log slope: " << num(fit_loglog_slope(rows)) << '\n';
  note << "theoretical exponent (gamma2 - gamma1) / 2: "
       << num(((g2 - g1) / Rational(2)).to_double()) << '\n';
  note << "wall time: " << num(seconds_since(start)) << " s\n";
  return exit_ok;
}

int cmd_verify(const std::string& module, int trials, std::uint64_t seed,
               bool fault, std::ostream& out, std::ostream& err) {
  std::vector<PropertyResult> results;
  try {
    results = run_verify({module, trials, seed, fault});
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  out << "a2w " << kVersion << " verify module=" << module << " trials=" << trials
      << " seed=" << seed << '\n';
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.module << '.' << r.name << " ("
        << r.trials << " trials)";
    if (!r.passed) out << ": " << r.detail;
    out << '\n';
    all &= r.passed;
  }
  out << (all ? "all properties passed" : "property failure") << '\n';
  return all ? exit_ok : exit_verify_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const CliOptions& options) {
  CLI::App app{"Matrix A2 weight toolkit", "a2w"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string spec_path;
  bool json_out = false;
  auto* check = app.add_subcommand("check", "Decide whether a weight is A2");
  check->add_option("spec", spec_path, "weight spec (JSON)")->required();
  check->add_flag("--json", json_out, "emit one JSON document");

  std::string functional = "trace";
  std::string grid = "coarse";
  int certify = 0;
  auto* constant = app.add_subcommand("constant", "Estimate the A2 characteristic");
  constant->add_option("spec", spec_path, "weight spec (JSON)")->required();
  constant->add_option("--functional", functional, "trace or norm")
      ->check(CLI::IsMember({"trace", "norm"}));
  constant->add_option("--grid", grid, "coarse or fine")
      ->check(CLI::IsMember({"coarse", "fine"}));
  constant->add_flag("--json", json_out, "emit one JSON document");
  constant->add_option("--certify-grid", certify,
                       "number of successively doubled grid levels")
      ->check(CLI::Range(0, 4));

  std::string g1, g2, out_path;
  double n_min = 100, n_max = 1e5;
  int points = 13;
  auto* divergence = app.add_subcommand(
      "divergence", "Averages over [2 pi n, 2 pi n + pi] for a planar rotation weight");
  divergence->add_option("--gamma1", g1, "first eigen-exponent p/q")->required();
  divergence->add_option("--gamma2", g2, "second eigen-exponent p/q")->required();
  divergence->add_option("--n-min", n_min, "smallest n");
  divergence->add_option("--n-max", n_max, "largest n");
  divergence->add_option("--points", points, "number of log-spaced n")
      ->check(CLI::Range(2, 1000));
  divergence->add_option("--out", out_path, "CSV output file");

  std::string module = "all";
  int trials = 100;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Run randomized oracle suites");
  verify->add_option("--module", module, "linalg, type1, type2, multivar or all")
      ->check(CLI::IsMember({"linalg", "type1", "type2", "multivar", "all"}));
  verify->add_option("--trials", trials, "trials per property")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*check) return cmd_check(spec_path, json_out, out, err);
    if (*constant) {
      return cmd_constant(spec_path, functional, grid, json_out, certify, out, err);
    }
    if (*divergence) {
      return cmd_divergence(g1, g2, n_min, n_max, points, out_path, out, err);
    }
    if (*verify) {
      return cmd_verify(module, trials, seed, options.inject_fault, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace a2w
