#pragma once

#include <functional>
#include <string>

#include "hmhd/ledger.hpp"
#include "hmhd/operators.hpp"
#include "hmhd/spectral_ops.hpp"

namespace hmhd {

// Parameters of the projected, frequency-truncated system
//   du/dt = P_n [ (B . grad) B - (u . grad) u ]
//   dB/dt = P_n [ (B . grad) u - (u . grad) B - hall * curl((curl B) x B) ]
//           - (-Laplace)^alpha B
// where P_n is the composition of the Leray projection with the sharp ball
// cutoff |k| <= friedrichs_radius. Pressure never appears: the projection
// absorbs it.
struct SimParams {
  double alpha = 1.0;
  double friedrichs_radius = 0.0;  // must be set; <= N/3 for exact products
  double sigma = 2.5;              // Sobolev index tracked by the ledger
  double cfl = 0.3;
  double dt_max = 0.05;
  double hall_coefficient = 1.0;  // 0 switches the Hall term off
  // Freeze u and integrate only the induction equation (with u = 0 the
  // magnetic energy then obeys the pure decay balance exactly).
  bool evolve_velocity = true;
};

struct SimState {
  VectorField u;
  VectorField B;
  double t = 0.0;
};

struct RhsResult {
  VectorField du;
  VectorField dB;
};

struct StepResult {
  SimState state;
  // Quadrature increments (Simpson weights on the four stages) of
  // int ||Lambda^alpha B||^2 and its H^sigma-weighted variant; same formal
  // order as the stepper.
  double dissipation_increment = 0.0;
  double dissipation_hs_increment = 0.0;
  // L2 size of the change made by the post-step cleanup (dealias, project,
  // ball truncation). Stays at roundoff; growth signals a defect.
  double restoration_drift = 0.0;
};

struct EvolveOptions {
  bool auto_dt = true;
  double fixed_dt = 0.0;       // used when auto_dt is false
  int ledger_every = 1;        // sample cadence in steps (first/last always)
  LedgerSink row_sink;         // optional streaming consumer
  int snapshot_every = 0;      // 0 = never
  std::function<void(const SimState&, long step)> snapshot_sink;
};

struct EvolveResult {
  SimState state;
  EnergyLedger ledger;
  long steps = 0;
  double dissipation_integral = 0.0;     // int_0^t ||Lambda^alpha B||^2
  double dissipation_hs_integral = 0.0;  // H^sigma-weighted variant
  double max_restoration_drift = 0.0;
  bool diverged = false;
  std::string divergence_message;
};

// Integrator facade owning the workspace. Single-owner, like the workspace.
class HallMhdSystem {
 public:
  HallMhdSystem(Grid grid, SimParams params);

  const SimParams& params() const { return params_; }
  const Grid& grid() const { return ws_.grid(); }
  OperatorWorkspace& workspace() { return ws_; }

  // Project + truncate arbitrary fields into the admissible set.
  SimState prepare(const VectorField& u0, const VectorField& B0, double t0 = 0.0);

  // Right-hand side at a state. Inputs must be solenoidal and supported in
  // the ball (prepare() establishes this); violations beyond tolerance
  // raise std::invalid_argument.
  RhsResult rhs(const SimState& s);

  // One step of the integrating-factor RK4 scheme: the exact semigroup
  // exp(-|k|^{2 alpha} dt) of the dissipative part composed with classical
  // RK4 on the transported variable. Exact for the linear part (a zero
  // nonlinearity decays to machine precision), classical order 4 overall.
  // Raises DivergenceError on non-finite output.
  StepResult step(const SimState& s, double dt);

  // CFL heuristic: dt = cfl * min(h / max|u|, h^2 / (2 max|B|), h^{2 alpha})
  // with h the grid spacing, capped by dt_max. Zero fields give dt_max.
  double select_dt(const SimState& s);

  // March from the state to t0 + horizon. The ledger holds the initial row,
  // every ledger_every-th step and the final row. On divergence the partial
  // ledger survives in the result with diverged set.
  EvolveResult evolve(const SimState& initial, double horizon, const EvolveOptions& opts);

  // Assemble one ledger row at a state (used for the initial row and by
  // diagnostics). cum_dissipation is the integrated dissipation so far and
  // e0 the conserved total.
  LedgerRow ledger_row(const SimState& s, double cum_dissipation, double e0);

 private:
  SimParams params_;
  OperatorWorkspace ws_;
  FrequencyFilter ball_;
};

}  // namespace hmhd
