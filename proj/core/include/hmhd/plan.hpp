#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hmhd/dynamics.hpp"
#include "hmhd/initial_data.hpp"

namespace hmhd {

enum class ExperimentKind { Run, Diagnose, Converge, AlphaSweep };

const char* to_string(ExperimentKind kind);

// Fully resolved description of one experiment. Defaults here are the
// documented defaults; negative cutoff and sigma are sentinels that
// finalize_plan() replaces with the grid-derived values (floor(N/3) and a
// dimension-dependent Sobolev index).
struct RunPlan {
  ExperimentKind experiment = ExperimentKind::Run;
  int n_axis = 64;
  DimMode mode = DimMode::TwoPointFiveD;
  double alpha = 1.0;
  double cutoff = -1.0;
  double sigma = -1.0;
  double horizon = 0.25;
  DataSpec data;
  double cfl = 0.3;
  bool dt_auto = true;
  double dt_fixed = 0.0;
  double dt_max = 0.05;
  int ledger_every = 1;
  int snapshot_every = 0;
  std::string output = "out";
  int jobs = 1;
  std::vector<double> cutoffs;  // converge
  std::vector<double> alphas;   // alpha-sweep
  bool hall = true;
  bool b_only = false;
  double growth_cap = 10.0;
  int samples = 8;
};

// Apply one "key = value" assignment. Unknown keys and malformed values
// raise ValidationError; the CLI funnels flag overrides through the same
// path so both layers agree on spelling and checks.
void apply_key(RunPlan& plan, const std::string& key, const std::string& value);

// Parse a config file of "key = value" lines ('#' starts a comment).
RunPlan parse_config(const std::filesystem::path& path);

// Fill derived defaults and cross-check the plan. Returns human-readable
// warnings (e.g. a Sobolev index too small for the Lipschitz embedding);
// hard violations raise ValidationError.
std::vector<std::string> finalize_plan(RunPlan& plan);

Grid make_grid(const RunPlan& plan);
SimParams sim_params(const RunPlan& plan);

}  // namespace hmhd
