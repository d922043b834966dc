// Command-line front end; tools/main.cpp forwards argv here.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anticyc {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitDataMissing = 3,
  kExitHypothesis = 4,
};

/// args excludes the program name. Tables go to `out` (or --output), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anticyc
