#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meritfair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
/// `witness` found a violating group pair.
inline constexpr int kExitViolation = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meritfair::cli
