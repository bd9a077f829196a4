#pragma once

#include <iosfwd>

#include "hmhd/plan.hpp"

namespace hmhd {

// Process exit codes shared by the library entry point and the CLI.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitIo = 4;

// Execute a plan and write its artifacts (ledger.csv, snapshots, report
// CSVs, a human-readable summary and manifest.json) under plan.output.
// Returns an exit code; diagnostics and warnings go to log. Partial
// artifacts survive a mid-run divergence.
int run_experiment(const RunPlan& plan, std::ostream& log);

}  // namespace hmhd
