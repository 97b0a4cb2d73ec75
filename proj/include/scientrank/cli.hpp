#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scientrank::cli {

/// Exit codes: 0 success, 1 data/analysis error, 2 usage/config error.
enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

struct Terminal {
    /// stdout is a terminal; text tables may then be styled unless
    /// SCIENTRANK_NO_COLOR is set.
    bool is_tty = false;
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Terminal term = {});

}  // namespace scientrank::cli
