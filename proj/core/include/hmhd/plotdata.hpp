#pragma once

#include <filesystem>

namespace hmhd {

// Convert a run ledger or a cutoff-sweep report into whitespace-delimited
// files ready for plotting, one file per figure:
//   ledger.csv            -> energy_vs_t.dat, hsigma_vs_t.dat
//   converge_report.csv   -> cauchy_vs_cutoff.dat
// The input kind is detected from the header line. An empty ledger yields
// header-only outputs; malformed rows raise IoError with file and line.
void emit_plotdata(const std::filesystem::path& input, const std::filesystem::path& outdir);

}  // namespace hmhd
