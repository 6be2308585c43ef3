#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qinv {

enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

// Dispatches one subcommand (args exclude the program name). The report goes
// to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qinv
