#pragma once

#include <iosfwd>

namespace aads {

enum ExitCode : int {
  kExitPass = 0,
  kExitFailed = 1,
  kExitUsage = 2,
  kExitDivergent = 3,
};

/// Runs one command line. Human-readable output goes to `out`, diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aads
