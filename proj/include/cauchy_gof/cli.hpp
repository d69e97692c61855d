#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cauchy_gof {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitNumerical = 3,
};

/// Entry point of the `cauchy-gof` tool. `args` excludes the program name.
/// Human-readable output goes to `out`, diagnostics and progress to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cauchy_gof
