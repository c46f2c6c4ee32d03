#pragma once

#include <iosfwd>

namespace fo2kc {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitResource = 3,
  kExitMismatch = 4,
};

/// Runs the command line front end with output redirected to the given
/// streams.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

} // namespace fo2kc
