// Command-line front end. Every flag that shapes an experiment is forwarded
// through apply_key(), the same path config files take, so both layers share
// one spelling and one set of checks. A --config file is applied first and
// explicit flags override it.

#include <CLI11.hpp>

#include <deque>
#include <iostream>
#include <string>

#include "hmhd/errors.hpp"
#include "hmhd/experiment.hpp"
#include "hmhd/plan.hpp"
#include "hmhd/plotdata.hpp"
#include "hmhd/version.hpp"

namespace {

struct KeyedFlag {
  const char* key;
  std::string value;
  CLI::Option* opt = nullptr;
};

// State for one experiment subcommand. Deques keep element addresses stable
// while CLI11 holds references into them.
struct PlanCommand {
  CLI::App* cmd = nullptr;
  const char* name = nullptr;
  std::string config;
  CLI::Option* config_opt = nullptr;
  std::deque<KeyedFlag> flags;
  std::string snapshot_path;
  CLI::Option* snapshot_opt = nullptr;
  bool hall_value = true;
  CLI::Option* hall_opt = nullptr;
  bool b_only_value = false;
  CLI::Option* b_only_opt = nullptr;
};

void keyed(PlanCommand& pc, const char* flag, const char* key, const char* help) {
  pc.flags.push_back(KeyedFlag{key, {}, nullptr});
  KeyedFlag& kf = pc.flags.back();
  kf.opt = pc.cmd->add_option(flag, kf.value, help);
}

void add_config_flag(PlanCommand& pc) {
  pc.config_opt = pc.cmd->add_option("--config", pc.config,
                                     "file of key = value lines applied before any flags");
}

void add_lattice_flags(PlanCommand& pc) {
  keyed(pc, "--N", "N", "lattice points per axis (power of two, >= 8)");
  keyed(pc, "--dim", "dim", "2.5d (x-y modes, three components) or 3d");
  keyed(pc, "--n", "n", "Fourier ball cutoff radius (default floor(N/3))");
  keyed(pc, "--sigma", "sigma", "Sobolev index tracked by the ledger");
}

void add_time_flags(PlanCommand& pc) {
  keyed(pc, "--T", "T", "time horizon");
  keyed(pc, "--cfl", "cfl", "CFL safety factor for the adaptive step");
  keyed(pc, "--dt", "dt", "'auto' or a fixed step size");
  keyed(pc, "--dt-max", "dt_max", "upper bound for the adaptive step");
  keyed(pc, "--ledger-every", "ledger_every", "steps between ledger rows");
}

void add_data_flags(PlanCommand& pc) {
  keyed(pc, "--data", "data", "orszag-tang, random, or snapshot:<path>");
  keyed(pc, "--amplitude", "amplitude", "initial data amplitude");
  keyed(pc, "--slope", "slope", "spectral slope of random data");
  keyed(pc, "--band", "band", "largest |k_i| seeded by random data");
  keyed(pc, "--seed", "seed", "RNG seed for random data");
}

void add_output_flags(PlanCommand& pc) {
  keyed(pc, "--output", "output", "output directory");
  keyed(pc, "--jobs", "jobs", "worker threads for multi-run experiments");
}

void add_physics_toggles(PlanCommand& pc) {
  pc.hall_opt = pc.cmd->add_flag("--hall,!--no-hall", pc.hall_value,
                                 "include the Hall term (default on)");
  pc.b_only_opt = pc.cmd->add_flag("--b-only,!--no-b-only", pc.b_only_value,
                                   "freeze the velocity and evolve B alone");
}

int dispatch(const PlanCommand& pc) {
  hmhd::RunPlan plan;
  if (pc.config_opt != nullptr && pc.config_opt->count() > 0) {
    plan = hmhd::parse_config(pc.config);
  }
  hmhd::apply_key(plan, "experiment", pc.name);
  for (const KeyedFlag& kf : pc.flags) {
    if (kf.opt->count() > 0) hmhd::apply_key(plan, kf.key, kf.value);
  }
  if (pc.hall_opt != nullptr && pc.hall_opt->count() > 0) {
    hmhd::apply_key(plan, "hall", pc.hall_value ? "on" : "off");
  }
  if (pc.b_only_opt != nullptr && pc.b_only_opt->count() > 0) {
    hmhd::apply_key(plan, "b_only", pc.b_only_value ? "on" : "off");
  }
  if (pc.snapshot_opt != nullptr && pc.snapshot_opt->count() > 0) {
    hmhd::apply_key(plan, "data", "snapshot:" + pc.snapshot_path);
  }
  return hmhd::run_experiment(plan, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral Hall-MHD on a periodic box with fractional magnetic diffusion"};
  app.set_version_flag("--version", hmhd::kVersion);
  app.require_subcommand(1);

  std::deque<PlanCommand> cmds;

  {
    PlanCommand& pc = cmds.emplace_back();
    pc.name = "run";
    pc.cmd = app.add_subcommand("run", "evolve one configuration and write its ledger");
    add_config_flag(pc);
    add_lattice_flags(pc);
    keyed(pc, "--alpha", "alpha", "fractional diffusion exponent");
    add_time_flags(pc);
    add_data_flags(pc);
    add_output_flags(pc);
    keyed(pc, "--snapshot-every", "snapshot_every", "steps between snapshots (0 disables)");
    add_physics_toggles(pc);
  }
  {
    PlanCommand& pc = cmds.emplace_back();
    pc.name = "diagnose";
    pc.cmd = app.add_subcommand("diagnose", "audit the exact identities on a snapshot");
    add_config_flag(pc);
    pc.snapshot_opt =
        pc.cmd->add_option("snapshot", pc.snapshot_path, "snapshot file to audit")->required();
    keyed(pc, "--sigma", "sigma", "Sobolev index used by the interpolation rows");
    keyed(pc, "--output", "output", "output directory");
  }
  {
    PlanCommand& pc = cmds.emplace_back();
    pc.name = "converge";
    pc.cmd = app.add_subcommand("converge", "Cauchy study across Fourier ball cutoffs");
    add_config_flag(pc);
    add_lattice_flags(pc);
    keyed(pc, "--alpha", "alpha", "fractional diffusion exponent");
    keyed(pc, "--cutoffs", "cutoffs", "comma-separated ball cutoffs to compare");
    keyed(pc, "--samples", "samples", "comparison instants per run");
    add_time_flags(pc);
    add_data_flags(pc);
    add_output_flags(pc);
    add_physics_toggles(pc);
  }
  {
    PlanCommand& pc = cmds.emplace_back();
    pc.name = "alpha-sweep";
    pc.cmd = app.add_subcommand("alpha-sweep", "boundedness probe across diffusion exponents");
    add_config_flag(pc);
    add_lattice_flags(pc);
    keyed(pc, "--alphas", "alphas", "comma-separated diffusion exponents");
    keyed(pc, "--growth-cap", "growth_cap", "allowed Sobolev growth factor");
    keyed(pc, "--samples", "samples", "ledger rows sampled per run");
    add_time_flags(pc);
    add_data_flags(pc);
    add_output_flags(pc);
    add_physics_toggles(pc);
  }

  std::string plot_input;
  std::string plot_output = ".";
  CLI::App* plot = app.add_subcommand("plot-data", "turn a ledger or sweep report into .dat columns");
  plot->add_option("input", plot_input, "ledger.csv or converge_report.csv")->required();
  plot->add_option("--output", plot_output, "directory for the .dat files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? hmhd::kExitSuccess : hmhd::kExitValidation;
  }

  try {
    if (plot->parsed()) {
      hmhd::emit_plotdata(plot_input, plot_output);
      return hmhd::kExitSuccess;
    }
    for (const PlanCommand& pc : cmds) {
      if (pc.cmd->parsed()) return dispatch(pc);
    }
  } catch (const hmhd::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hmhd::kExitValidation;
  } catch (const hmhd::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hmhd::kExitIo;
  }
  return hmhd::kExitValidation;
}
