#pragma once

#include <iosfwd>

#include "eulerps/config.hpp"
#include "eulerps/state.hpp"

namespace eulerps {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitBlowUp = 3 };

/// Initial state for a run (random, snapshot, shear or zero) and its start time.
Snapshot initial_state(const RunConfig& cfg, const ModeSetPtr& modes);

/// Each command writes its report and progress text to `out`, files to the
/// configured paths, and returns an exit code. Exceptions propagate.
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_shear(const RunConfig& cfg, std::ostream& out);
int cmd_rank(const RunConfig& cfg, std::ostream& out);
int cmd_export(const RunConfig& cfg, std::ostream& out);

}  // namespace eulerps
