#pragma once

#include <iosfwd>

namespace dcflow::cli {

enum ExitCode : int { ok = 0, failure = 1, unstable = 2 };

/// Entry point shared by the `dcflow` executable and the tests.
/// Subcommands: simulate | converge | profile | validate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcflow::cli
