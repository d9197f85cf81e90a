#pragma once

#include <iosfwd>

namespace dgft::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kDimension = 3,
  kNumeric = 4,
};

/// Runs the command line; output and diagnostics go to the given streams
/// unless `-o` redirects output to a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgft::cli
