#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbvp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Primary output goes to
/// `out` unless --out is given; diagnostics and errors go to `err`.
/// Files are written only after every result has been computed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbvp::cli
