#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinstar {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitResourceGuard = 3,
    kExitIo = 4,
    kExitOracleMismatch = 5,
};

/// Entry point of the spinstar command line tool; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spinstar
