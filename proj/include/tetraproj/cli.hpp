#pragma once

#include <iosfwd>

namespace tetraproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

/// Runs the command line `argv[1..]`. Scenes and OBJ text go to the --out
/// file, or to `out` when it is absent or "-"; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tetraproj::cli
