#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relax::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNonConvergence = 2,
  kNoMethod = 3,
  kVerificationFailed = 4,
};

/// Runs the `relax` command line. `args` excludes the program name.
///
///   eval ml3|kernel|neg-int ...   special-function values
///   solve ...                     solution curve as CSV or JSON
///   verify kochubei|model|curve   diagnostics report
///   sweep ...                     tau* and series coverage over a parameter range
///
/// `--config FILE` supplies flat key=value defaults for the flags; flags
/// given on the command line win. RELAX_MAX_TERMS overrides the series term
/// cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relax::cli
