// Microbenchmarks for the hot paths: transforms, the nonlinear terms, one
// full right-hand side, one time step, and the shell analysis. Grid sizes
// cover the small diagnostic lattice and the production default.

#include <benchmark/benchmark.h>

#include <cmath>

#include "hmhd/dynamics.hpp"
#include "hmhd/fft.hpp"
#include "hmhd/initial_data.hpp"
#include "hmhd/lp.hpp"
#include "hmhd/operators.hpp"

using namespace hmhd;

namespace {

Grid grid_for(const benchmark::State& state) {
  return Grid(DimMode::TwoPointFiveD, static_cast<int>(state.range(0)));
}

double radius_for(const Grid& g) {
  return std::floor(g.points_per_axis() / 3.0);
}

}  // namespace

static void BM_FftRoundTrip(benchmark::State& state) {
  const Grid g = grid_for(state);
  FftEngine fft(g);
  const VectorField f = random_solenoidal(g, 1.0, 1.0, static_cast<int>(radius_for(g)), 1);
  for (auto _ : state) {
    auto samples = to_physical(fft, f);
    benchmark::DoNotOptimize(to_spectral(fft, samples));
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(32)->Arg(64);

static void BM_Advect(benchmark::State& state) {
  const Grid g = grid_for(state);
  OperatorWorkspace ws(g);
  const auto [u, f] = random_solenoidal_pair(g, 1.0, 1.0, static_cast<int>(radius_for(g)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(advect(ws, u, f));
  }
}
BENCHMARK(BM_Advect)->Arg(32)->Arg(64);

static void BM_HallTerm(benchmark::State& state) {
  const Grid g = grid_for(state);
  OperatorWorkspace ws(g);
  const VectorField B = random_solenoidal(g, 1.0, 1.0, static_cast<int>(radius_for(g)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hall_term(ws, B));
  }
}
BENCHMARK(BM_HallTerm)->Arg(32)->Arg(64);

static void BM_Rhs(benchmark::State& state) {
  const Grid g = grid_for(state);
  SimParams p;
  p.friedrichs_radius = radius_for(g);
  HallMhdSystem sys(g, p);
  const SimState s =
      sys.prepare(orszag_tang_velocity(g, 1.0), orszag_tang_magnetic(g, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.rhs(s));
  }
}
BENCHMARK(BM_Rhs)->Arg(32)->Arg(64);

static void BM_Step(benchmark::State& state) {
  const Grid g = grid_for(state);
  SimParams p;
  p.friedrichs_radius = radius_for(g);
  HallMhdSystem sys(g, p);
  const SimState s =
      sys.prepare(orszag_tang_velocity(g, 1.0), orszag_tang_magnetic(g, 1.0));
  const double dt = sys.select_dt(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.step(s, dt));
  }
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64);

static void BM_ShellAnalysis(benchmark::State& state) {
  const Grid g = grid_for(state);
  const VectorField f = random_solenoidal(g, 1.0, 1.0, static_cast<int>(radius_for(g)), 4);
  for (auto _ : state) {
    const auto d = decompose(f);
    benchmark::DoNotOptimize(d.blocks.size());
    benchmark::DoNotOptimize(besov_norm(f, 2.5));
  }
}
BENCHMARK(BM_ShellAnalysis)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
