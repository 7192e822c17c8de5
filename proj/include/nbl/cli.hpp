#pragma once

#include <iosfwd>

namespace nbl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the nbl tool. The report goes to --out, or to `out` when
/// no path is given; the one-line-per-fact summary always goes to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nbl::cli
