#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skolem::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFalse = 1,
  kUsageError = 2,
  kComputationError = 3,
};

/// Runs the `skolem` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skolem::cli
