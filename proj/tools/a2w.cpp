#include <iostream>
#include <string>
#include <vector>

#include "a2w/cli.hpp"

int main(int argc, char** argv) {
  a2w::CliOptions options;
#ifdef A2W_INJECT_FAULT
  options.inject_fault = true;
#endif
  std::vector<std::string> args(argv + 1, argv + argc);
  return a2w::run_cli(args, std::cout, std::cerr, options);
}
