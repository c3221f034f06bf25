#pragma once

#include <iosfwd>

namespace secroute {

/// Parses argv, runs the subcommand and returns the exit status: 0 on
/// success, 1 for usage errors, 2 when the instance is infeasible.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace secroute
