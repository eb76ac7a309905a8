#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uhuopm::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1; ///< unreadable, malformed or invalid input
inline constexpr int kExitUsage = 2;     ///< bad flags or out-of-range parameters
inline constexpr int kExitBudget = 3;    ///< oracle enumeration budget exceeded

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit status. Subcommands: mine, oracle, generate, augment, stats,
/// bench.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uhuopm::cli
