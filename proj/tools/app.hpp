#pragma once

#include <ostream>

namespace rtshuffle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitTooLarge = 3;

/// Entry point of the rtshuffle tool; argv[0] is the program name. Data goes
/// to `out` (or the --out file), diagnostics and the verify summary to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rtshuffle::cli
