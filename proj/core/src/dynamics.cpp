#include "hmhd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hmhd/errors.hpp"
#include "hmhd/lp.hpp"

namespace hmhd {

namespace {

constexpr double kSupportTol = 1e-13;   // relative, outside-ball coefficients
constexpr double kDivergenceTol = 1e-10;  // relative, solenoidality of inputs

void check_params(const Grid& grid, const SimParams& p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("dynamics: alpha must be > 0");
  if (!(p.friedrichs_radius > 0.0)) {
    throw std::invalid_argument("dynamics: friedrichs_radius must be set > 0");
  }
  if (3.0 * p.friedrichs_radius > static_cast<double>(grid.points_per_axis())) {
    throw std::invalid_argument(
        "dynamics: friedrichs_radius must be <= N/3 so quadratic terms stay exact");
  }
  if (!(p.cfl > 0.0)) throw std::invalid_argument("dynamics: cfl must be > 0");
  if (!(p.dt_max > 0.0)) throw std::invalid_argument("dynamics: dt_max must be > 0");
  if (p.hall_coefficient < 0.0) {
    throw std::invalid_argument("dynamics: hall_coefficient must be >= 0");
  }
}

// Half-step decay factors exp(-|k|^{2 alpha} dt / 2) on the lattice.
std::vector<double> half_step_decay(const Grid& grid, double alpha, double dt) {
  std::vector<double> f(grid.size());
  for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    f[idx] = std::exp(-std::pow(k2, alpha) * 0.5 * dt);
  });
  return f;
}

void apply_decay(VectorField& b, const std::vector<double>& factor) {
  for (int c = 0; c < 3; ++c) {
    auto& a = b.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= factor[i];
  }
}

double sq(double x) { return x * x; }

}  // namespace

HallMhdSystem::HallMhdSystem(Grid grid, SimParams params)
    : params_(params),
      ws_(grid),
      ball_(FrequencyFilter::friedrichs_ball(params.friedrichs_radius)) {
  check_params(grid, params_);
}

SimState HallMhdSystem::prepare(const VectorField& u0, const VectorField& B0, double t0) {
  if (u0.grid() != grid() || B0.grid() != grid()) {
    throw std::invalid_argument("prepare: fields live on a different grid");
  }
  SimState s{apply_filter(leray_project(u0), ball_), apply_filter(leray_project(B0), ball_),
             t0};
  s.u.set_divergence_free(true);
  s.B.set_divergence_free(true);
  return s;
}

namespace {

void check_admissible(const VectorField& f, const FrequencyFilter& ball, const char* name) {
  if (!all_finite(f)) {
    throw std::invalid_argument(std::string("rhs: ") + name + " has non-finite coefficients");
  }
  const double mag = max_coefficient(f);
  if (mag == 0.0) return;
  if (residual_outside(f, ball) > kSupportTol * mag) {
    throw std::invalid_argument(std::string("rhs: ") + name +
                                " has support outside the frequency ball");
  }
  if (divergence_residual(f) > kDivergenceTol) {
    throw std::invalid_argument(std::string("rhs: ") + name + " is not divergence-free");
  }
}

}  // namespace

RhsResult HallMhdSystem::rhs(const SimState& s) {
  check_admissible(s.u, ball_, "u");
  check_admissible(s.B, ball_, "B");

  const PhysicalJet ju = physical_jet(ws_, s.u);
  const PhysicalJet jb = physical_jet(ws_, s.B);

  // (B . grad) u - (u . grad) B, then the Hall contribution.
  VectorField db = advect_from_jets(ws_, jb, ju);
  add_scaled(db, advect_from_jets(ws_, ju, jb), -1.0);
  if (params_.hall_coefficient != 0.0) {
    // curl((curl B) x B) with B's physical samples reused from the jet.
    const VectorField J = curl(s.B);
    const auto pj = to_physical(ws_.fft(), J);
    const std::size_t m = grid().size();
    std::array<std::vector<double>, 3> pc;
    for (auto& v : pc) v.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      pc[0][i] = pj[1][i] * jb.value[2][i] - pj[2][i] * jb.value[1][i];
      pc[1][i] = pj[2][i] * jb.value[0][i] - pj[0][i] * jb.value[2][i];
      pc[2][i] = pj[0][i] * jb.value[1][i] - pj[1][i] * jb.value[0][i];
    }
    VectorField jxb = to_spectral(ws_.fft(), pc);
    filter_in_place(jxb, ws_.dealias());
    add_scaled(db, curl(jxb), -params_.hall_coefficient);
  }
  db = apply_filter(leray_project(db), ball_);
  db.set_divergence_free(true);

  RhsResult out{VectorField(grid()), std::move(db)};
  if (params_.evolve_velocity) {
    VectorField du = advect_from_jets(ws_, jb, jb);
    add_scaled(du, advect_from_jets(ws_, ju, ju), -1.0);
    du = apply_filter(leray_project(du), ball_);
    du.set_divergence_free(true);
    out.du = std::move(du);
  }
  return out;
}

StepResult HallMhdSystem::step(const SimState& s, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step: dt must be finite and >= 0");
  }
  const std::vector<double> a = half_step_decay(grid(), params_.alpha, dt);
  const double alpha = params_.alpha;
  const double sigma = params_.sigma;

  // A blowup mid-step shows up as non-finite stage values once the physical
  // products overflow. That is a divergence of the trajectory, not a caller
  // error, so catch it here instead of letting the admissibility check inside
  // rhs reject the stage state.
  const auto guard_stage = [&s](const SimState& y) {
    if (all_finite(y.u) && all_finite(y.B)) return;
    throw DivergenceError("step: non-finite stage coefficients in step starting at t = " +
                              std::to_string(s.t),
                          s.t);
  };

  const RhsResult k1 = rhs(s);
  double g1 = sq(fractional_seminorm(s.B, alpha));
  double gs1 = sq(fractional_seminorm_sobolev(s.B, alpha, sigma));

  // Stage 2: Y2 = a (Y + dt/2 k1).
  SimState y2{s.u, s.B, s.t + 0.5 * dt};
  add_scaled(y2.u, k1.du, 0.5 * dt);
  add_scaled(y2.B, k1.dB, 0.5 * dt);
  apply_decay(y2.B, a);
  guard_stage(y2);
  const RhsResult k2 = rhs(y2);
  double g2 = sq(fractional_seminorm(y2.B, alpha));
  double gs2 = sq(fractional_seminorm_sobolev(y2.B, alpha, sigma));

  // Stage 3: Y3 = a Y + dt/2 k2.
  SimState y3{s.u, s.B, s.t + 0.5 * dt};
  apply_decay(y3.B, a);
  add_scaled(y3.u, k2.du, 0.5 * dt);
  add_scaled(y3.B, k2.dB, 0.5 * dt);
  guard_stage(y3);
  const RhsResult k3 = rhs(y3);
  double g3 = sq(fractional_seminorm(y3.B, alpha));
  double gs3 = sq(fractional_seminorm_sobolev(y3.B, alpha, sigma));

  // Stage 4: Y4 = a^2 Y + dt a k3.
  SimState y4{s.u, s.B, s.t + dt};
  apply_decay(y4.B, a);
  apply_decay(y4.B, a);
  VectorField k3b = k3.dB;
  apply_decay(k3b, a);
  add_scaled(y4.u, k3.du, dt);
  add_scaled(y4.B, k3b, dt);
  guard_stage(y4);
  const RhsResult k4 = rhs(y4);
  double g4 = sq(fractional_seminorm(y4.B, alpha));
  double gs4 = sq(fractional_seminorm_sobolev(y4.B, alpha, sigma));

  // Combine: u by plain RK4, B through the decayed stages.
  SimState next{s.u, s.B, s.t + dt};
  add_scaled(next.u, k1.du, dt / 6.0);
  add_scaled(next.u, k2.du, dt / 3.0);
  add_scaled(next.u, k3.du, dt / 3.0);
  add_scaled(next.u, k4.du, dt / 6.0);

  apply_decay(next.B, a);
  apply_decay(next.B, a);
  VectorField k1b = k1.dB;
  apply_decay(k1b, a);
  apply_decay(k1b, a);
  VectorField k2b = k2.dB;
  apply_decay(k2b, a);
  // k3b already carries one decay factor from the stage-4 build, which is
  // exactly the weight the combination needs.
  add_scaled(next.B, k1b, dt / 6.0);
  add_scaled(next.B, k2b, dt / 3.0);
  add_scaled(next.B, k3b, dt / 3.0);
  add_scaled(next.B, k4.dB, dt / 6.0);

  StepResult out{std::move(next), 0.0, 0.0, 0.0};
  out.dissipation_increment = dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
  out.dissipation_hs_increment = dt / 6.0 * (gs1 + 2.0 * gs2 + 2.0 * gs3 + gs4);

  // Cleanup pass: retruncate, reproject, retruncate. All three are exact
  // multipliers, so this is a no-op up to roundoff; the drift is recorded
  // as a health signal.
  VectorField u_clean = apply_filter(out.state.u, ws_.dealias());
  u_clean = apply_filter(leray_project(u_clean), ball_);
  VectorField b_clean = apply_filter(out.state.B, ws_.dealias());
  b_clean = apply_filter(leray_project(b_clean), ball_);
  out.restoration_drift = std::sqrt(sq(l2_distance(u_clean, out.state.u)) +
                                    sq(l2_distance(b_clean, out.state.B)));
  u_clean.set_divergence_free(true);
  b_clean.set_divergence_free(true);
  out.state.u = std::move(u_clean);
  out.state.B = std::move(b_clean);

  if (!all_finite(out.state.u) || !all_finite(out.state.B)) {
    throw DivergenceError("step: non-finite coefficients after step starting at t = " +
                              std::to_string(s.t),
                          s.t);
  }
  return out;
}

double HallMhdSystem::select_dt(const SimState& s) {
  const double max_u = max_pointwise_norm(ws_.fft(), s.u);
  const double max_b = max_pointwise_norm(ws_.fft(), s.B);
  if (max_u == 0.0 && max_b == 0.0) return params_.dt_max;
  const double h = grid().spacing();
  double cand = std::pow(h, 2.0 * params_.alpha);
  if (max_u > 0.0) cand = std::min(cand, h / max_u);
  if (max_b > 0.0) cand = std::min(cand, h * h / (2.0 * max_b));
  return std::min(params_.cfl * cand, params_.dt_max);
}

LedgerRow HallMhdSystem::ledger_row(const SimState& s, double cum_dissipation, double e0) {
  LedgerRow row;
  row.t = s.t;
  row.e_u = 0.5 * sq(l2_norm(s.u));
  row.e_b = 0.5 * sq(l2_norm(s.B));
  row.dissipation = sq(fractional_seminorm(s.B, params_.alpha));
  row.hs_u = sobolev_norm(s.u, params_.sigma);
  row.hs_b = sobolev_norm(s.B, params_.sigma);
  row.div_u = divergence_residual(s.u);
  row.div_b = divergence_residual(s.B);
  if (params_.hall_coefficient != 0.0) {
    row.hall_flux = params_.hall_coefficient * l2_inner(hall_term(ws_, s.B), s.B);
  }
  row.balance_residual = std::abs(row.e_u + row.e_b + cum_dissipation - e0);
  return row;
}

EvolveResult HallMhdSystem::evolve(const SimState& initial, double horizon,
                                   const EvolveOptions& opts) {
  if (!(horizon >= 0.0)) throw std::invalid_argument("evolve: horizon must be >= 0");
  if (!opts.auto_dt && !(opts.fixed_dt > 0.0)) {
    throw std::invalid_argument("evolve: fixed_dt must be > 0 when auto_dt is off");
  }
  if (opts.ledger_every < 1) throw std::invalid_argument("evolve: ledger_every must be >= 1");

  EvolveResult res{initial, EnergyLedger{}, 0, 0.0, 0.0, 0.0, false, ""};
  const double e0 = 0.5 * (sq(l2_norm(initial.u)) + sq(l2_norm(initial.B)));
  const auto emit = [&](const SimState& s) {
    const LedgerRow row = ledger_row(s, res.dissipation_integral, e0);
    res.ledger.append(row);
    if (opts.row_sink) opts.row_sink(row);
  };
  emit(initial);

  const double t_end = initial.t + horizon;
  const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
  while (res.state.t < t_end - tiny) {
    double dt = opts.auto_dt ? select_dt(res.state) : opts.fixed_dt;
    bool final_step = false;
    if (res.state.t + dt >= t_end - tiny) {
      dt = t_end - res.state.t;
      final_step = true;
    }
    try {
      StepResult sr = step(res.state, dt);
      res.state = std::move(sr.state);
      res.dissipation_integral += sr.dissipation_increment;
      res.dissipation_hs_integral += sr.dissipation_hs_increment;
      res.max_restoration_drift = std::max(res.max_restoration_drift, sr.restoration_drift);
    } catch (const DivergenceError& e) {
      res.diverged = true;
      res.divergence_message = e.what();
      break;
    }
    if (final_step) res.state.t = t_end;
    ++res.steps;
    if (final_step || res.steps % opts.ledger_every == 0) emit(res.state);
    if (opts.snapshot_every > 0 && opts.snapshot_sink && !final_step &&
        res.steps % opts.snapshot_every == 0) {
      opts.snapshot_sink(res.state, res.steps);
    }
  }
  return res;
}

}  // namespace hmhd
