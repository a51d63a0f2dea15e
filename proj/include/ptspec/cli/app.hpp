#pragma once

#include <iosfwd>

namespace ptspec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
};

/// Entry point of the ptspec command line.  Results go to `out` in one
/// write; warnings and the one-line error reason go to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace ptspec::cli
