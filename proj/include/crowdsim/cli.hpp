#pragma once

namespace crowdsim {

/// Full command-line interface: `validate`, `run`, `sweep` subcommands.
/// Returns the process exit code: 0 success, 1 parse or validation
/// failure (including bad command lines), 2 runtime failure.
int run_cli(int argc, const char* const* argv);

} // namespace crowdsim
