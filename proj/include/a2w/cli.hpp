#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace a2w {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the a2w tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_decision_failed = 3,
  exit_search_failed = 4,
  exit_verify_failed = 5,
};

struct CliOptions {
  bool inject_fault = false;
};

/// Runs `a2w <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const CliOptions& options = {});

}  // namespace a2w
