// Command-line front end: jacobi, gauss, verify and characters.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cyclocert::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; args exclude the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclocert::cli
