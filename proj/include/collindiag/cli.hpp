#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace collindiag::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericalError = 3,
};

/// Everything the command reads from the process environment.
struct Environment {
  std::optional<std::string> default_format;  // COLLINDIAG_FORMAT
  static Environment from_process();
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace collindiag::cli
