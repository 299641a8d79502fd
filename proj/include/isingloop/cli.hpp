#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isingloop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // a check ran and failed (ed-check), or an internal error
inline constexpr int kExitUsage = 2;       // bad flags or invalid values
inline constexpr int kExitDegenerate = 3;  // a definite answer was asked for at an origin crossing

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` or the --out file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isingloop::cli
