#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line (args excludes the program name). Results go to
/// `out`, diagnostics and usage text to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tricover::cli
