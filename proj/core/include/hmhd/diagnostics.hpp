#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmhd/dynamics.hpp"
#include "hmhd/initial_data.hpp"

namespace hmhd {

// Shared scaffolding for the parameter sweeps. params carries the baseline
// (its alpha and friedrichs_radius are overridden per run by the sweep
// parameter).
struct ProbeSetup {
  Grid grid;
  SimParams params;
  DataSpec data;
  double horizon = 0.25;
  double fixed_dt = 0.0;  // 0 = derive one shared dt from the largest cutoff
  int samples = 8;        // target number of comparison instants
  int jobs = 1;
  double growth_cap = 10.0;  // boundedness threshold, relative to the start
};

// ---- Cutoff (Cauchy) sweep -------------------------------------------------

struct SweepSample {
  double t = 0.0;
  double du = 0.0;
  double db = 0.0;
  double combined = 0.0;
};

struct SweepPair {
  double n_small = 0.0;
  double n_large = 0.0;
  std::vector<SweepSample> samples;
  double max_combined = 0.0;
};

struct SweepRun {
  double cutoff = 0.0;
  EnergyLedger ledger;
  bool diverged = false;
  std::string message;
};

struct ConvergenceReport {
  std::vector<SweepRun> runs;
  std::vector<double> sample_times;
  std::vector<SweepPair> pairs;
  // Worst combined difference among pairs sharing the same smaller cutoff,
  // keyed by that cutoff, ascending.
  std::vector<std::pair<double, double>> group_max;
  double shared_dt = 0.0;
  double slack = 1.05;
  bool cauchy_monotone = false;
  bool any_diverged = false;
};

// Run the same initial data truncated to each cutoff with one shared fixed
// dt, compare run pairs inside the smaller ball at matching instants, and
// test that differences shrink as the smaller cutoff grows (nonstrict,
// with multiplicative slack per rung).
ConvergenceReport friedrichs_sweep(const ProbeSetup& setup, std::vector<double> cutoffs);

// ---- Dissipation-strength sweep ---------------------------------------------

enum class BoundednessVerdict { Bounded, HitHorizon, BlewUp };

const char* to_string(BoundednessVerdict v);

struct AlphaSeries {
  double alpha = 0.0;
  std::vector<double> times;
  std::vector<double> hs_u;
  std::vector<double> hs_b;
  double max_hs_combined = 0.0;
  double dissipation_integral = 0.0;     // int ||Lambda^alpha B||^2
  double dissipation_hs_integral = 0.0;  // H^sigma-weighted variant
  BoundednessVerdict verdict = BoundednessVerdict::Bounded;
  std::string note;
};

struct BoundednessReport {
  double sigma = 0.0;
  double growth_cap = 0.0;
  std::vector<AlphaSeries> series;
};

// Evolve the same data under several dissipation exponents and classify
// each run: Bounded (H^sigma never exceeded growth_cap times its initial
// value), HitHorizon (finished but exceeded the cap), BlewUp (non-finite).
BoundednessReport alpha_probe(const ProbeSetup& setup, std::vector<double> alphas);

// ---- State audit -------------------------------------------------------------

// One exact identity evaluated on a state. value is a defect (relative
// residual, or distance outside an admissible interval), so 0 means the
// identity holds exactly and pass means value <= tolerance.
struct AuditRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

std::vector<AuditRow> identity_audit(OperatorWorkspace& ws, const SimState& state,
                                     double alpha, double friedrichs_radius, double sigma);

}  // namespace hmhd
