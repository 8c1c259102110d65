#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qconv::cli {

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kViolation = 1;
inline constexpr int kParseError = 2;
inline constexpr int kNumericError = 3;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qconv::cli
