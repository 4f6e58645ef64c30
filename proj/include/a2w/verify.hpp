#pragma once

// Randomized oracle suites: each property compares an implementation route
// against an independent one over seeded trials.

#include <cstdint>
#include <string>
#include <vector>

namespace a2w {

struct VerifyOptions {
  std::string module = "all";  // linalg, type1, type2, multivar, all
  int trials = 100;
  std::uint64_t seed = 42;
  bool inject_fault = false;   // perturbs one linalg route; harness self-test
};

struct PropertyResult {
  std::string module;
  std::string name;
  bool passed = true;
  int trials = 0;
  std::string detail;  // first failing case
};

/// Throws invalid_argument for an unknown module or non-positive trials.
std::vector<PropertyResult> run_verify(const VerifyOptions& options);

}  // namespace a2w
