#pragma once

// Subcommand implementations behind the stabcg executable. Each writes its
// files under config.out and returns a process exit code.

#include <ostream>

#include "stabcg/config.hpp"
#include "stabcg/errors.hpp"

namespace stabcg {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitNoStableRegion = 4 };

int exit_code_for(ErrorKind kind);

int cmd_modes(const RunConfig& config, std::ostream& log);
int cmd_scan(const RunConfig& config, std::ostream& log);
int cmd_optimize(const RunConfig& config, std::ostream& log);
int cmd_solve(const RunConfig& config, std::ostream& log);
int cmd_convergence(const RunConfig& config, std::ostream& log);

/// Validates, dispatches on config.command and maps errors to exit codes.
int run_command(const RunConfig& config, std::ostream& log);

}  // namespace stabcg
