#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "a2w/cli.hpp"

using namespace a2w;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, bool fault = false) {
  std::ostringstream out, err;
  CliOptions options;
  options.inject_fault = fault;
  const int code = run_cli(args, out, err, options);
  return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) {
  return std::string(A2W_SPEC_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("check reports derived exponents and the verdict") {
  const Run r = run({"check", spec("weight_2x2.json")});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find("-1/12") != std::string::npos);
  CHECK(r.out.find("A2: yes") != std::string::npos);

  const Run j = run({"check", spec("weight_3x3.json"), "--json"});
  REQUIRE(j.code == exit_ok);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["report"]["verdict"] == "a2");
  CHECK(doc["derived"]["exponents"][0][2] == "5/8");
  CHECK(doc["derived"]["exponents"][1][2] == "-1/8");

  const Run p = run({"check", spec("perturbed_2x2.json"), "--json"});
  const auto pd = nlohmann::json::parse(p.out);
  CHECK(pd["report"]["verdict"] == "not_positive_definite_ae");
  CHECK(pd["report"]["witness"].is_number());

  const Run rot = run({"check", spec("rotation_unequal.json")});
  CHECK(rot.out.find("A2: no (rotation criterion: exponents unequal (0 vs 1/2))") !=
        std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"check", spec("float_exponent.json")}).code == exit_usage);
  CHECK(run({"check", spec("missing.json")}).code == exit_usage);
  CHECK(run({"frobnicate"}).code == exit_usage);
  CHECK(run({"divergence", "--gamma1", "1/2", "--gamma2", "1/2"}).code == exit_usage);
  CHECK(run({"divergence", "--gamma1", "0.5", "--gamma2", "3/4"}).code == exit_usage);
}

TEST_CASE("constant on closed-form and failing weights") {
  const Run s = run({"constant", spec("scalar_half.json"), "--json"});
  REQUIRE(s.code == exit_ok);
  const auto doc = nlohmann::json::parse(s.out);
  CHECK(doc["result"]["estimate"].get<double>() ==
        doctest::Approx(doc["closed_form"].get<double>()).epsilon(1e-6));
  CHECK(doc["result"]["lower_bound_only"] == true);
  CHECK(run({"constant", spec("rotation_unequal.json")}).code == exit_decision_failed);
  CHECK(run({"constant", spec("weight_2x2.json"), "--functional", "spectral"}).code ==
        exit_usage);
}

TEST_CASE("constant JSON is deterministic") {
  const Run a = run({"constant", spec("weight_2x2.json"), "--json"});
  const Run b = run({"constant", spec("weight_2x2.json"), "--json"});
  CHECK(a.code == exit_ok);
  CHECK(a.out == b.out);
}

TEST_CASE("divergence CSV") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "a2w_cli_test_1.csv").string();
  const std::string p2 = (dir / "a2w_cli_test_2.csv").string();
  const std::vector<std::string> base = {"divergence", "--gamma1", "0", "--gamma2", "1/2",
                                         "--n-min", "10", "--n-max", "1000", "--points", "5",
                                         "--out"};
  auto a1 = base, a2 = base;
  a1.push_back(p1);
  a2.push_back(p2);
  CHECK(run(a1).code == exit_ok);
  CHECK(run(a2).code == exit_ok);
  const std::string c1 = slurp(p1);
  CHECK(c1.rfind("n,a,b,avg_w,avg_winv,product\n", 0) == 0);
  CHECK(std::count(c1.begin(), c1.end(), '\n') == 6);
  CHECK(c1 == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("verify passes and detects an injected fault") {
  const Run ok = run({"verify", "--module", "linalg", "--trials", "20"});
  CHECK(ok.code == exit_ok);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  const Run bad = run({"verify", "--module", "linalg", "--trials", "20"}, true);
  CHECK(bad.code == exit_verify_failed);
  CHECK(bad.out.find("FAIL linalg.leibniz_det_matches_lu") != std::string::npos);
  CHECK(run({"verify", "--module", "nonsense"}).code == exit_usage);
}

TEST_CASE("version") {
  const Run v = run({"--version"});
  CHECK(v.out.find(kVersion) != std::string::npos);
}
