#pragma once

#include <ostream>

namespace heis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and returns the exit code: 0 on success,
/// 1 when a check fails (the witness goes to `out`), 2 on usage or budget
/// errors (message to `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heis::cli
