#pragma once

#include <iosfwd>

namespace conngraph::cli {

/// Process exit statuses.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kDisconnectedTemplate = 3,
    kTStarNotFound = 4,
    kEnumerationCap = 5,
};

/// Runs the command line (argv[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conngraph::cli
