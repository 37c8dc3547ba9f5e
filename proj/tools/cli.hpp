#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expsubdiv::cli {

enum ExitCode : int {
  kPass = 0,
  kPropertyFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expsubdiv::cli
