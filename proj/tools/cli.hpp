#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqot::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kNotConverged = 3,
};

/// Runs one command line. `args` excludes the program name. Reports go to
/// `out` unless --output names a file; errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqot::cli
