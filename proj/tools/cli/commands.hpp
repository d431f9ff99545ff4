#pragma once

#include <iosfwd>

namespace heightlab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Parses argv, runs one subcommand and writes results to `out`, diagnostics to
// `err`. Returns 0 on success, 2 on input errors, 3 on budget or quadrature
// failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heightlab::cli
