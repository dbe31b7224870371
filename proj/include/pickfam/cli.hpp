#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pickfam::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInfeasible = 1,
  kUndetermined = 2,
  kInputError = 3,
  kToleranceFailure = 4,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pickfam::cli
