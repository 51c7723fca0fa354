#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdefect {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitTolerance = 1,  // oracle-compare found a delta outside tolerance
  kExitInvalid = 2,
  kExitSolver = 3,
};

/// Runs one CLI invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdefect
