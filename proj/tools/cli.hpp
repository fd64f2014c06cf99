#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vbg {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command; reports go to `out` as JSON lines, usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vbg
