#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdplan::cli {

// Process exit codes of `fdplan decompose`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUnsolvable = 2;
inline constexpr int kExitResourceExhausted = 3;

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fdplan::cli
