#pragma once

#include <iosfwd>

#include "drlab/error.hpp"

namespace drlab {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalidOperator = 3;
inline constexpr int kExitDimension = 4;
inline constexpr int kExitPrecondition = 5;

int exit_code_for(Errc code) noexcept;

/// Entry point behind the `drlab` executable. Subcommands: rel, dr, iterate,
/// sweep, escape.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drlab
