#pragma once

#include <iosfwd>

namespace polycat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `polycat` tool: enumerate, count, verify, info.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polycat::cli
