#include "hmhd/plan.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hmhd/errors.hpp"

namespace hmhd {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Run:
      return "run";
    case ExperimentKind::Diagnose:
      return "diagnose";
    case ExperimentKind::Converge:
      return "converge";
    case ExperimentKind::AlphaSweep:
      return "alpha-sweep";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' needs a number, got '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' needs an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("config: key '" + key + "' needs on/off, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::istringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw ValidationError("config: key '" + key + "' has an empty list entry");
    }
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ValidationError("config: key '" + key + "' needs a nonempty list");
  return out;
}

}  // namespace

void apply_key(RunPlan& plan, const std::string& key, const std::string& value) {
  if (key == "experiment") {
    if (value == "run") {
      plan.experiment = ExperimentKind::Run;
    } else if (value == "diagnose") {
      plan.experiment = ExperimentKind::Diagnose;
    } else if (value == "converge") {
      plan.experiment = ExperimentKind::Converge;
    } else if (value == "alpha-sweep") {
      plan.experiment = ExperimentKind::AlphaSweep;
    } else {
      throw ValidationError("config: unknown experiment '" + value + "'");
    }
  } else if (key == "N") {
    plan.n_axis = static_cast<int>(parse_long(key, value));
  } else if (key == "dim") {
    if (value == "2.5d") {
      plan.mode = DimMode::TwoPointFiveD;
    } else if (value == "3d") {
      plan.mode = DimMode::ThreeD;
    } else {
      throw ValidationError("config: dim must be 2.5d or 3d, got '" + value + "'");
    }
  } else if (key == "alpha") {
    plan.alpha = parse_double(key, value);
  } else if (key == "n") {
    plan.cutoff = parse_double(key, value);
  } else if (key == "sigma") {
    plan.sigma = parse_double(key, value);
  } else if (key == "T") {
    plan.horizon = parse_double(key, value);
  } else if (key == "data") {
    if (value == "orszag-tang") {
      plan.data.kind = DataSpec::Kind::OrszagTang;
      plan.data.path.clear();
    } else if (value == "random") {
      plan.data.kind = DataSpec::Kind::RandomPair;
      plan.data.path.clear();
    } else if (value.rfind("snapshot:", 0) == 0) {
      plan.data.kind = DataSpec::Kind::SnapshotFile;
      plan.data.path = value.substr(9);
      if (plan.data.path.empty()) {
        throw ValidationError("config: data=snapshot: needs a file path");
      }
    } else {
      throw ValidationError("config: data must be orszag-tang, random or snapshot:<path>");
    }
  } else if (key == "amplitude") {
    plan.data.amplitude = parse_double(key, value);
  } else if (key == "slope") {
    plan.data.slope = parse_double(key, value);
  } else if (key == "band") {
    plan.data.band = static_cast<int>(parse_long(key, value));
  } else if (key == "seed") {
    plan.data.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "cfl") {
    plan.cfl = parse_double(key, value);
  } else if (key == "dt") {
    if (value == "auto") {
      plan.dt_auto = true;
      plan.dt_fixed = 0.0;
    } else {
      plan.dt_auto = false;
      plan.dt_fixed = parse_double(key, value);
    }
  } else if (key == "dt_max") {
    plan.dt_max = parse_double(key, value);
  } else if (key == "ledger_every") {
    plan.ledger_every = static_cast<int>(parse_long(key, value));
  } else if (key == "snapshot_every") {
    plan.snapshot_every = static_cast<int>(parse_long(key, value));
  } else if (key == "output") {
    plan.output = value;
  } else if (key == "jobs") {
    plan.jobs = static_cast<int>(parse_long(key, value));
  } else if (key == "cutoffs") {
    plan.cutoffs = parse_list(key, value);
  } else if (key == "alphas") {
    plan.alphas = parse_list(key, value);
  } else if (key == "hall") {
    plan.hall = parse_bool(key, value);
  } else if (key == "b_only") {
    plan.b_only = parse_bool(key, value);
  } else if (key == "growth_cap") {
    plan.growth_cap = parse_double(key, value);
  } else if (key == "samples") {
    plan.samples = static_cast<int>(parse_long(key, value));
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

RunPlan parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("config: cannot open " + path.string());
  RunPlan plan;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: " + path.string() + ":" + std::to_string(lineno) +
                            ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config: " + path.string() + ":" + std::to_string(lineno) +
                            ": empty key");
    }
    try {
      apply_key(plan, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return plan;
}

std::vector<std::string> finalize_plan(RunPlan& plan) {
  std::vector<std::string> warnings;
  if (plan.n_axis < 8 || !std::has_single_bit(static_cast<unsigned>(plan.n_axis))) {
    throw ValidationError("plan: N must be a power of two >= 8, got " +
                          std::to_string(plan.n_axis));
  }
  if (plan.cutoff < 0.0) plan.cutoff = std::floor(plan.n_axis / 3.0);
  if (!(plan.cutoff > 0.0) || 3.0 * plan.cutoff > static_cast<double>(plan.n_axis)) {
    throw ValidationError("plan: n must satisfy 0 < n <= N/3 (exact products); got n = " +
                          std::to_string(plan.cutoff));
  }
  if (!(plan.alpha > 0.0)) throw ValidationError("plan: alpha must be > 0");
  if (!(plan.horizon >= 0.0)) throw ValidationError("plan: T must be >= 0");
  if (!(plan.data.amplitude > 0.0)) throw ValidationError("plan: amplitude must be > 0");
  if (plan.data.band < 1 || 3 * plan.data.band > plan.n_axis) {
    throw ValidationError("plan: band must satisfy 1 <= band <= N/3");
  }
  if (!(plan.cfl > 0.0)) throw ValidationError("plan: cfl must be > 0");
  if (!plan.dt_auto && !(plan.dt_fixed > 0.0)) {
    throw ValidationError("plan: dt must be 'auto' or a positive number");
  }
  if (!(plan.dt_max > 0.0)) throw ValidationError("plan: dt_max must be > 0");
  if (plan.ledger_every < 1) throw ValidationError("plan: ledger_every must be >= 1");
  if (plan.snapshot_every < 0) throw ValidationError("plan: snapshot_every must be >= 0");
  if (plan.jobs < 1) throw ValidationError("plan: jobs must be >= 1");
  if (!(plan.growth_cap > 0.0)) throw ValidationError("plan: growth_cap must be > 0");
  if (plan.samples < 1) throw ValidationError("plan: samples must be >= 1");

  const int d = effective_dim(plan.mode);
  if (plan.sigma < 0.0) plan.sigma = d == 2 ? 2.5 : 2.75;
  if (!(plan.sigma > 0.0)) throw ValidationError("plan: sigma must be > 0");
  if (plan.sigma <= 1.0 + 0.5 * d) {
    warnings.push_back("sigma = " + std::to_string(plan.sigma) +
                       " is at or below 1 + d/2; the Lipschitz embedding does not apply");
  }

  switch (plan.experiment) {
    case ExperimentKind::Run:
      break;
    case ExperimentKind::Diagnose:
      if (plan.data.kind != DataSpec::Kind::SnapshotFile || plan.data.path.empty()) {
        throw ValidationError("plan: diagnose needs data = snapshot:<path>");
      }
      break;
    case ExperimentKind::Converge:
      if (plan.cutoffs.empty()) {
        throw ValidationError("plan: converge needs cutoffs = n1,n2,...");
      }
      for (const double c : plan.cutoffs) {
        if (!(c > 0.0) || 3.0 * c > static_cast<double>(plan.n_axis)) {
          throw ValidationError("plan: cutoff " + std::to_string(c) +
                                " violates 0 < n <= N/3");
        }
      }
      if (plan.cutoffs.size() < 2) {
        warnings.push_back("converge with a single cutoff is degenerate; nothing to compare");
      }
      if (plan.data.kind == DataSpec::Kind::SnapshotFile) {
        throw ValidationError("plan: converge does not take snapshot data");
      }
      break;
    case ExperimentKind::AlphaSweep:
      if (plan.alphas.empty()) {
        throw ValidationError("plan: alpha-sweep needs alphas = a1,a2,...");
      }
      for (const double a : plan.alphas) {
        if (!(a > 0.0)) throw ValidationError("plan: alphas must be > 0");
      }
      if (plan.data.kind == DataSpec::Kind::SnapshotFile) {
        throw ValidationError("plan: alpha-sweep does not take snapshot data");
      }
      break;
  }
  return warnings;
}

Grid make_grid(const RunPlan& plan) { return Grid(plan.mode, plan.n_axis); }

SimParams sim_params(const RunPlan& plan) {
  SimParams p;
  p.alpha = plan.alpha;
  p.friedrichs_radius = plan.cutoff;
  p.sigma = plan.sigma;
  p.cfl = plan.cfl;
  p.dt_max = plan.dt_max;
  p.hall_coefficient = plan.hall ? 1.0 : 0.0;
  p.evolve_velocity = !plan.b_only;
  return p;
}

}  // namespace hmhd
