#pragma once

namespace dclab {

/// Entry point of the dclab tool.  Parses argv, dispatches the
/// subcommand, writes structured output.  Returns the process exit
/// code: 0 on success, 2 on input/validation errors (including
/// critical-regime guard violations), 1 on numerical failures.
int run_cli(int argc, const char* const* argv);

}  // namespace dclab
