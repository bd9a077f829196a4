#include "hmhd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hmhd/diagnostics.hpp"
#include "hmhd/errors.hpp"
#include "hmhd/snapshot.hpp"
#include "hmhd/version.hpp"

namespace hmhd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short tag for file names: converge_n=21.csv, alpha-sweep_alpha=0.75.csv.
std::string param_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

json plan_to_json(const RunPlan& plan) {
  json j;
  j["experiment"] = to_string(plan.experiment);
  j["N"] = plan.n_axis;
  j["dim"] = plan.mode == DimMode::TwoPointFiveD ? "2.5d" : "3d";
  j["alpha"] = plan.alpha;
  j["n"] = plan.cutoff;
  j["sigma"] = plan.sigma;
  j["T"] = plan.horizon;
  switch (plan.data.kind) {
    case DataSpec::Kind::OrszagTang:
      j["data"] = "orszag-tang";
      break;
    case DataSpec::Kind::RandomPair:
      j["data"] = "random";
      break;
    case DataSpec::Kind::SnapshotFile:
      j["data"] = "snapshot:" + plan.data.path;
      break;
  }
  j["amplitude"] = plan.data.amplitude;
  j["slope"] = plan.data.slope;
  j["band"] = plan.data.band;
  j["seed"] = plan.data.seed;
  j["cfl"] = plan.cfl;
  j["dt"] = plan.dt_auto ? json("auto") : json(plan.dt_fixed);
  j["dt_max"] = plan.dt_max;
  j["ledger_every"] = plan.ledger_every;
  j["snapshot_every"] = plan.snapshot_every;
  j["output"] = plan.output;
  j["jobs"] = plan.jobs;
  j["cutoffs"] = plan.cutoffs;
  j["alphas"] = plan.alphas;
  j["hall"] = plan.hall;
  j["b_only"] = plan.b_only;
  j["growth_cap"] = plan.growth_cap;
  j["samples"] = plan.samples;
  return j;
}

struct ManifestExtra {
  bool diverged = false;
  std::vector<std::string> warnings;
  json details = json::object();
};

void write_manifest(const fs::path& dir, const RunPlan& plan, double wall_seconds,
                    const ManifestExtra& extra) {
  json j;
  j["version"] = kVersion;
  j["plan"] = plan_to_json(plan);
  j["wall_time_seconds"] = wall_seconds;
  j["concurrency"] = plan.jobs > 1 ? "parallel" : "reference";
  j["diverged"] = extra.diverged;
  j["warnings"] = extra.warnings;
  if (!extra.details.empty()) j["details"] = extra.details;
  auto os = open_out(dir / "manifest.json");
  os << j.dump(2) << '\n';
}

ProbeSetup probe_setup(const RunPlan& plan, const Grid& grid) {
  ProbeSetup setup{grid, sim_params(plan), plan.data};
  setup.horizon = plan.horizon;
  setup.fixed_dt = plan.dt_auto ? 0.0 : plan.dt_fixed;
  setup.samples = plan.samples;
  setup.jobs = plan.jobs;
  setup.growth_cap = plan.growth_cap;
  return setup;
}

int exec_run(const RunPlan& plan, const fs::path& dir, std::ostream& log,
             ManifestExtra& extra) {
  Grid grid = make_grid(plan);
  double t0 = 0.0;
  VectorField u0(grid);
  VectorField b0(grid);
  if (plan.data.kind == DataSpec::Kind::SnapshotFile) {
    Snapshot snap = read_snapshot(plan.data.path);
    if (snap.u.grid() != grid) {
      log << "note: snapshot grid overrides the configured lattice\n";
      grid = snap.u.grid();
    }
    u0 = snap.u;
    b0 = snap.B;
    t0 = snap.t;
    extra.details["snapshot_t0"] = snap.t;
    extra.details["snapshot_alpha"] = snap.alpha;
  } else {
    auto fields = make_initial_fields(grid, plan.data);
    u0 = std::move(fields.first);
    b0 = std::move(fields.second);
  }

  SimParams params = sim_params(plan);
  // A cutoff sized for the configured lattice may not fit a smaller
  // snapshot lattice; clamp and say so.
  const double max_cutoff = std::floor(grid.points_per_axis() / 3.0);
  if (params.friedrichs_radius > max_cutoff) {
    log << "note: clamping n to " << max_cutoff << " for this lattice\n";
    params.friedrichs_radius = max_cutoff;
  }
  HallMhdSystem system(grid, params);
  const SimState start = system.prepare(u0, b0, t0);

  auto ledger_os = open_out(dir / "ledger.csv");
  EvolveOptions opts;
  opts.auto_dt = plan.dt_auto;
  opts.fixed_dt = plan.dt_fixed;
  opts.ledger_every = plan.ledger_every;
  opts.snapshot_every = plan.snapshot_every;
  opts.snapshot_sink = [&](const SimState& s, long step) {
    char name[48];
    std::snprintf(name, sizeof name, "snapshot_%08ld.hmhd", step);
    write_snapshot(dir / name, s.u, s.B, s.t, params.alpha);
  };
  const EvolveResult result = system.evolve(start, plan.horizon, opts);
  result.ledger.write_csv(ledger_os);
  ledger_os.flush();
  write_snapshot(dir / "snapshot_final.hmhd", result.state.u, result.state.B, result.state.t,
                 params.alpha);

  extra.details["steps"] = result.steps;
  extra.details["dissipation_integral"] = result.dissipation_integral;
  extra.details["max_restoration_drift"] = result.max_restoration_drift;
  if (result.diverged) {
    extra.diverged = true;
    log << "run diverged: " << result.divergence_message << "\n";
    return kExitDiverged;
  }
  if (!result.ledger.empty()) {
    const LedgerRow& last = result.ledger.rows().back();
    log << "run finished at t = " << fmt17(last.t) << ", E = " << fmt17(last.e_u + last.e_b)
        << ", balance residual = " << fmt17(last.balance_residual) << "\n";
  }
  return kExitSuccess;
}

int exec_converge(const RunPlan& plan, const fs::path& dir, std::ostream& log,
                  ManifestExtra& extra) {
  const Grid grid = make_grid(plan);
  const ConvergenceReport report = friedrichs_sweep(probe_setup(plan, grid), plan.cutoffs);

  for (const SweepRun& run : report.runs) {
    auto os = open_out(dir / ("converge_n=" + param_tag(run.cutoff) + ".csv"));
    run.ledger.write_csv(os);
  }
  {
    auto os = open_out(dir / "converge_report.csv");
    os << "pair_small,pair_large,t,du,dB,combined\n";
    for (const SweepPair& pair : report.pairs) {
      for (const SweepSample& s : pair.samples) {
        os << param_tag(pair.n_small) << ',' << param_tag(pair.n_large) << ',' << fmt17(s.t)
           << ',' << fmt17(s.du) << ',' << fmt17(s.db) << ',' << fmt17(s.combined) << '\n';
      }
    }
  }
  {
    auto os = open_out(dir / "converge_summary.txt");
    os << "cutoff sweep: shared dt = " << fmt17(report.shared_dt) << "\n";
    os << "worst combined difference by smaller cutoff:\n";
    for (const auto& [cutoff, worst] : report.group_max) {
      os << "  n = " << param_tag(cutoff) << "  ->  " << fmt17(worst) << "\n";
    }
    os << "cauchy decrease (slack " << report.slack
       << "): " << (report.cauchy_monotone ? "yes" : "NO") << "\n";
    if (report.any_diverged) os << "warning: at least one run diverged\n";
  }
  extra.details["shared_dt"] = report.shared_dt;
  extra.details["cauchy_monotone"] = report.cauchy_monotone;
  if (report.any_diverged) {
    extra.diverged = true;
    log << "converge: a sweep run diverged\n";
    return kExitDiverged;
  }
  log << "converge finished: " << report.pairs.size() << " pair(s), cauchy decrease "
      << (report.cauchy_monotone ? "holds" : "violated") << "\n";
  return kExitSuccess;
}

int exec_alpha_sweep(const RunPlan& plan, const fs::path& dir, std::ostream& log,
                     ManifestExtra& extra) {
  const Grid grid = make_grid(plan);
  const BoundednessReport report = alpha_probe(probe_setup(plan, grid), plan.alphas);

  bool any_blew_up = false;
  for (const AlphaSeries& s : report.series) {
    auto os = open_out(dir / ("alpha-sweep_alpha=" + param_tag(s.alpha) + ".csv"));
    os << "t,Hs_u,Hs_B\n";
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      os << fmt17(s.times[i]) << ',' << fmt17(s.hs_u[i]) << ',' << fmt17(s.hs_b[i]) << '\n';
    }
    any_blew_up = any_blew_up || s.verdict == BoundednessVerdict::BlewUp;
  }
  {
    auto os = open_out(dir / "alpha-sweep_report.csv");
    os << "alpha,verdict,max_hs,dissipation_integral,dissipation_hs_integral\n";
    for (const AlphaSeries& s : report.series) {
      os << param_tag(s.alpha) << ',' << to_string(s.verdict) << ',' << fmt17(s.max_hs_combined)
         << ',' << fmt17(s.dissipation_integral) << ',' << fmt17(s.dissipation_hs_integral)
         << '\n';
    }
  }
  {
    auto os = open_out(dir / "alpha-sweep_summary.txt");
    os << "dissipation sweep at sigma = " << report.sigma << ", growth cap "
       << report.growth_cap << "x\n";
    for (const AlphaSeries& s : report.series) {
      os << "  alpha = " << param_tag(s.alpha) << ": " << to_string(s.verdict)
         << ", max Hs = " << fmt17(s.max_hs_combined)
         << ", int ||L^a B||^2_Hs = " << fmt17(s.dissipation_hs_integral) << "\n";
      if (!s.note.empty()) os << "    " << s.note << "\n";
    }
  }
  for (const AlphaSeries& s : report.series) {
    log << "alpha = " << param_tag(s.alpha) << ": " << to_string(s.verdict) << "\n";
  }
  if (any_blew_up) {
    extra.diverged = true;
    return kExitDiverged;
  }
  return kExitSuccess;
}

int exec_diagnose(const RunPlan& plan, const fs::path& dir, std::ostream& log,
                  ManifestExtra& extra) {
  const Snapshot snap = read_snapshot(plan.data.path);
  const Grid& grid = snap.u.grid();
  OperatorWorkspace ws(grid);
  const SimState state{snap.u, snap.B, snap.t};
  const double radius = std::floor(grid.points_per_axis() / 3.0);
  const auto rows = identity_audit(ws, state, snap.alpha, radius, plan.sigma);

  bool all_pass = true;
  {
    auto os = open_out(dir / "diagnose_report.csv");
    os << "name,value,tolerance,pass\n";
    for (const AuditRow& row : rows) {
      os << row.name << ',' << fmt17(row.value) << ',' << fmt17(row.tolerance) << ','
         << (row.pass ? "yes" : "no") << '\n';
      all_pass = all_pass && row.pass;
    }
  }
  {
    auto os = open_out(dir / "diagnose_summary.txt");
    os << "state audit of " << plan.data.path << " (t = " << fmt17(snap.t)
       << ", alpha = " << param_tag(snap.alpha) << ", sigma = " << param_tag(plan.sigma)
       << ")\n";
    for (const AuditRow& row : rows) {
      os << "  " << (row.pass ? "ok  " : "FAIL") << "  " << row.name << " = "
         << fmt17(row.value) << " (tol " << fmt17(row.tolerance) << ")\n";
    }
    os << (all_pass ? "all identities hold\n" : "identity violations found\n");
  }
  for (const AuditRow& row : rows) {
    log << (row.pass ? "ok  " : "FAIL") << "  " << row.name << " = " << fmt17(row.value)
        << "\n";
  }
  extra.details["audit_pass"] = all_pass;
  log << (all_pass ? "all identities hold\n" : "identity violations found\n");
  return all_pass ? kExitSuccess : kExitValidation;
}

}  // namespace

int run_experiment(const RunPlan& input_plan, std::ostream& log) {
  const auto t_start = std::chrono::steady_clock::now();
  RunPlan plan = input_plan;
  ManifestExtra extra;
  fs::path dir;
  try {
    extra.warnings = finalize_plan(plan);
    for (const std::string& w : extra.warnings) log << "warning: " << w << "\n";
    dir = plan.output;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    int code = kExitSuccess;
    switch (plan.experiment) {
      case ExperimentKind::Run:
        code = exec_run(plan, dir, log, extra);
        break;
      case ExperimentKind::Converge:
        code = exec_converge(plan, dir, log, extra);
        break;
      case ExperimentKind::AlphaSweep:
        code = exec_alpha_sweep(plan, dir, log, extra);
        break;
      case ExperimentKind::Diagnose:
        code = exec_diagnose(plan, dir, log, extra);
        break;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(dir, plan, wall, extra);
    return code;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DivergenceError& e) {
    log << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace hmhd
