#pragma once

#include <ostream>

namespace givens {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitDomain = 2,
    kExitTolerance = 3,
};

/// Entry point of the `givens` tool; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace givens
