#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evtcfar::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kPartialFailure = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evtcfar::cli
