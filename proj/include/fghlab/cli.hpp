#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fghlab::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kResourceLimit = 3 };

/// Runs one command line (args[0] is the program name). Output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fghlab::cli
