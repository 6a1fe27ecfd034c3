#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pileshuffle::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kInfeasible = 1,
    kUsageError = 2,
    kBudgetExceeded = 3,
};

/// Runs `pileshuffle <args...>`; @p args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pileshuffle::cli
