#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInconsistent = 4;

inline constexpr unsigned long long kDefaultSeed = 20240531;

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssc
