#include "hmhd/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hmhd/errors.hpp"
#include "hmhd/lp.hpp"

namespace hmhd {

namespace {

double sq(double x) { return x * x; }

// Run fn(i) for i in [0, count) on up to `jobs` worker threads. The first
// captured exception is rethrown in the calling thread.
void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CutoffRunScratch {
  double cutoff = 0.0;
  EvolveResult result{SimState{VectorField(Grid(DimMode::TwoPointFiveD, 8)),
                               VectorField(Grid(DimMode::TwoPointFiveD, 8)), 0.0},
                      EnergyLedger{}};
  std::vector<SimState> states;  // at sample steps, final appended last
};

}  // namespace

ConvergenceReport friedrichs_sweep(const ProbeSetup& setup, std::vector<double> cutoffs) {
  if (cutoffs.empty()) throw ValidationError("cutoff sweep: needs at least one cutoff");
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  for (const double n : cutoffs) {
    if (!(n > 0.0)) throw ValidationError("cutoff sweep: cutoffs must be > 0");
    if (3.0 * n > static_cast<double>(setup.grid.points_per_axis())) {
      throw ValidationError("cutoff sweep: cutoff " + std::to_string(n) +
                            " violates n <= N/3 for N = " +
                            std::to_string(setup.grid.points_per_axis()));
    }
  }
  if (!(setup.horizon > 0.0)) throw ValidationError("cutoff sweep: horizon must be > 0");

  const auto fields = make_initial_fields(setup.grid, setup.data);

  // One shared time grid for every run, so states are compared at identical
  // instants: fix dt from the least truncated (largest cutoff) start.
  double dt = setup.fixed_dt;
  if (dt <= 0.0) {
    SimParams p = setup.params;
    p.friedrichs_radius = cutoffs.back();
    HallMhdSystem probe(setup.grid, p);
    dt = probe.select_dt(probe.prepare(fields.first, fields.second));
  }
  const long total_steps =
      std::max<long>(1, static_cast<long>(std::ceil(setup.horizon / dt - 1e-9)));
  const long cadence = std::max<long>(1, total_steps / std::max(1, setup.samples));

  std::vector<CutoffRunScratch> scratch(cutoffs.size());
  parallel_for(setup.jobs, cutoffs.size(), [&](std::size_t i) {
    SimParams p = setup.params;
    p.friedrichs_radius = cutoffs[i];
    HallMhdSystem system(setup.grid, p);
    const SimState start = system.prepare(fields.first, fields.second);
    EvolveOptions opts;
    opts.auto_dt = false;
    opts.fixed_dt = dt;
    opts.ledger_every = static_cast<int>(cadence);
    opts.snapshot_every = static_cast<int>(cadence);
    CutoffRunScratch& slot = scratch[i];
    slot.cutoff = cutoffs[i];
    opts.snapshot_sink = [&slot](const SimState& s, long) { slot.states.push_back(s); };
    slot.result = system.evolve(start, setup.horizon, opts);
    slot.states.push_back(slot.result.state);
  });

  ConvergenceReport report;
  report.shared_dt = dt;
  for (auto& s : scratch) {
    report.runs.push_back(
        SweepRun{s.cutoff, s.result.ledger, s.result.diverged, s.result.divergence_message});
    report.any_diverged = report.any_diverged || s.result.diverged;
  }
  if (report.any_diverged || cutoffs.size() < 2) {
    report.cauchy_monotone = !report.any_diverged;
    return report;
  }

  for (const SimState& s : scratch.front().states) report.sample_times.push_back(s.t);

  std::map<double, double> group;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    for (std::size_t j = i + 1; j < cutoffs.size(); ++j) {
      SweepPair pair;
      pair.n_small = cutoffs[i];
      pair.n_large = cutoffs[j];
      const FrequencyFilter small_ball = FrequencyFilter::friedrichs_ball(cutoffs[i]);
      const auto& si = scratch[i].states;
      const auto& sj = scratch[j].states;
      const std::size_t m = std::min(si.size(), sj.size());
      for (std::size_t k = 0; k < m; ++k) {
        SweepSample sample;
        sample.t = si[k].t;
        sample.du = l2_distance(si[k].u, apply_filter(sj[k].u, small_ball));
        sample.db = l2_distance(si[k].B, apply_filter(sj[k].B, small_ball));
        sample.combined = std::sqrt(sq(sample.du) + sq(sample.db));
        pair.max_combined = std::max(pair.max_combined, sample.combined);
        pair.samples.push_back(sample);
      }
      auto [it, inserted] = group.try_emplace(pair.n_small, pair.max_combined);
      if (!inserted) it->second = std::max(it->second, pair.max_combined);
      report.pairs.push_back(std::move(pair));
    }
  }
  report.group_max.assign(group.begin(), group.end());
  report.cauchy_monotone = true;
  for (std::size_t g = 1; g < report.group_max.size(); ++g) {
    if (report.group_max[g].second > report.slack * report.group_max[g - 1].second) {
      report.cauchy_monotone = false;
    }
  }
  return report;
}

const char* to_string(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::Bounded:
      return "bounded";
    case BoundednessVerdict::HitHorizon:
      return "hit-horizon";
    case BoundednessVerdict::BlewUp:
      return "blew-up";
  }
  return "?";
}

BoundednessReport alpha_probe(const ProbeSetup& setup, std::vector<double> alphas) {
  if (alphas.empty()) throw ValidationError("alpha probe: needs at least one alpha");
  for (const double a : alphas) {
    if (!(a > 0.0)) throw ValidationError("alpha probe: alpha must be > 0");
  }
  if (!(setup.horizon > 0.0)) throw ValidationError("alpha probe: horizon must be > 0");

  const auto fields = make_initial_fields(setup.grid, setup.data);
  BoundednessReport report;
  report.sigma = setup.params.sigma;
  report.growth_cap = setup.growth_cap;
  report.series.resize(alphas.size());

  parallel_for(setup.jobs, alphas.size(), [&](std::size_t i) {
    SimParams p = setup.params;
    p.alpha = alphas[i];
    HallMhdSystem system(setup.grid, p);
    const SimState start = system.prepare(fields.first, fields.second);
    EvolveOptions opts;
    opts.auto_dt = setup.fixed_dt <= 0.0;
    opts.fixed_dt = setup.fixed_dt;
    AlphaSeries& series = report.series[i];
    series.alpha = alphas[i];
    const EvolveResult result = system.evolve(start, setup.horizon, opts);
    double initial = 0.0;
    for (const LedgerRow& row : result.ledger.rows()) {
      const double combined = std::sqrt(sq(row.hs_u) + sq(row.hs_b));
      if (series.times.empty()) initial = combined;
      series.times.push_back(row.t);
      series.hs_u.push_back(row.hs_u);
      series.hs_b.push_back(row.hs_b);
      series.max_hs_combined = std::max(series.max_hs_combined, combined);
    }
    series.dissipation_integral = result.dissipation_integral;
    series.dissipation_hs_integral = result.dissipation_hs_integral;
    if (result.diverged) {
      series.verdict = BoundednessVerdict::BlewUp;
      series.note = result.divergence_message;
    } else if (series.max_hs_combined <= setup.growth_cap * std::max(initial, 0.0) ||
               series.max_hs_combined == 0.0) {
      series.verdict = BoundednessVerdict::Bounded;
    } else {
      series.verdict = BoundednessVerdict::HitHorizon;
    }
  });
  return report;
}

namespace {

AuditRow make_row(std::string name, double value, double tol) {
  AuditRow row;
  row.name = std::move(name);
  row.value = value;
  row.tolerance = tol;
  row.pass = value <= tol;
  return row;
}

double rel(double defect, double magnitude) {
  return magnitude > 0.0 ? defect / magnitude : 0.0;
}

}  // namespace

std::vector<AuditRow> identity_audit(OperatorWorkspace& ws, const SimState& state,
                                     double alpha, double friedrichs_radius, double sigma) {
  const VectorField& u = state.u;
  const VectorField& B = state.B;
  std::vector<AuditRow> rows;
  const FrequencyFilter ball = FrequencyFilter::friedrichs_ball(friedrichs_radius);

  rows.push_back(make_row("divergence u", divergence_residual(u), 1e-12));
  rows.push_back(make_row("divergence B", divergence_residual(B), 1e-12));
  rows.push_back(
      make_row("ball support u", rel(residual_outside(u, ball), max_coefficient(u)), 0.0));
  rows.push_back(
      make_row("ball support B", rel(residual_outside(B, ball), max_coefficient(B)), 0.0));

  const HallIdentityResiduals hall = hall_identity_residuals(ws, B);
  rows.push_back(make_row("hall orthogonality", hall.orthogonality, 1e-10));
  rows.push_back(make_row("hall derivative shift", hall.derivative_shift, 1e-10));
  rows.push_back(make_row("hall vector identity", hall.vector_identity, 1e-10));

  {
    const VectorField uB = advect(ws, u, B);
    const double defect = std::abs(l2_inner(uB, B));
    rows.push_back(
        make_row("transport neutrality", rel(defect, l2_norm(uB) * l2_norm(B)), 1e-10));
  }
  {
    const VectorField BB = advect(ws, B, B);
    const VectorField Bu = advect(ws, B, u);
    const double defect = std::abs(l2_inner(BB, u) + l2_inner(Bu, B));
    const double mag = l2_norm(BB) * l2_norm(u) + l2_norm(Bu) * l2_norm(B);
    rows.push_back(make_row("cross-term cancellation", rel(defect, mag), 1e-10));
  }

  {
    const auto blocks = decompose(B);
    const double defect = l2_distance(reconstruct(blocks), B);
    rows.push_back(make_row("shell partition", rel(defect, l2_norm(B)), 0.0));

    const NormEnvelope env = sobolev_besov_envelope(B.grid(), sigma);
    const double bes = besov_norm(B, sigma);
    double outside = 0.0;
    if (bes > 0.0) {
      const double ratio = sobolev_norm(B, sigma) / bes;
      outside = std::max({env.lo - ratio, ratio - env.hi, 0.0});
    }
    rows.push_back(make_row("norm ratio in envelope", outside, 1e-12));

    const double total = l2_norm(B);
    double worst = 0.0;
    for (int l = 0; l <= blocks.l_max(); ++l) {
      if (l2_norm(blocks.block(l)) <= 1e-13 * total) continue;
      const BernsteinRatio r = bernstein_check(blocks.block(l), l, alpha);
      worst = std::max({worst, 1.0 - r.normalized, r.normalized - r.upper});
    }
    rows.push_back(make_row("shell two-sided bound", worst, 1e-12));
  }

  {
    const ParaproductSplit split = paraproduct_split(ws, B, B);
    ScalarField sum = split.low_high;
    for (std::size_t i = 0; i < sum.hat().size(); ++i) {
      sum.hat()[i] += split.high_low.hat()[i] + split.resonant.hat()[i];
    }
    const ScalarField direct = dot_product(ws, B, B);
    double defect2 = 0.0;
    for (std::size_t i = 0; i < sum.hat().size(); ++i) {
      defect2 += std::norm(sum.hat()[i] - direct.hat()[i]);
    }
    const double defect = std::sqrt(B.grid().volume() * defect2);
    rows.push_back(make_row("paraproduct completeness", rel(defect, l2_norm(direct)), 1e-12));
  }

  {
    const int l = std::min(2, max_shell(ws.grid()));
    const VectorField direct = commutator_block(ws, l, u, B);
    const auto families = commutator_block_split(ws, l, u, B);
    VectorField sum = families[0];
    add_scaled(sum, families[1], 1.0);
    add_scaled(sum, families[2], 1.0);
    const double defect = l2_distance(sum, direct);
    const double mag = std::max(l2_norm(direct), l2_norm(advect(ws, u, B)));
    rows.push_back(make_row("commutator family telescope", rel(defect, mag), 1e-13));
  }

  rows.push_back(make_row("interpolation u", std::max(0.0, interpolation_check(u, 0.5 * sigma, sigma) - 1.0), 1e-12));
  rows.push_back(make_row("interpolation B", std::max(0.0, interpolation_check(B, 0.5 * sigma, sigma) - 1.0), 1e-12));
  return rows;
}

}  // namespace hmhd
