#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace meyerkit::cli {

/// Exit codes of the command line.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

/// Runs one command (arguments without the program name). The JSON report
/// goes to `out` unless --json names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meyerkit::cli
