#include "hmhd/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hmhd/spectral_ops.hpp"

namespace hmhd {

VectorField orszag_tang_velocity(const Grid& grid, double amplitude) {
  VectorField u(grid);
  const Complex half_i(0.0, 0.5);
  // -sin y in component x, sin x in component y.
  u.at(0, 0, 1, 0) = amplitude * half_i;
  u.at(0, 0, -1, 0) = -amplitude * half_i;
  u.at(1, 1, 0, 0) = -amplitude * half_i;
  u.at(1, -1, 0, 0) = amplitude * half_i;
  u.set_divergence_free(true);
  return u;
}

VectorField orszag_tang_magnetic(const Grid& grid, double amplitude) {
  VectorField b(grid);
  const Complex half_i(0.0, 0.5);
  // -sin y in component x, sin 2x in component y.
  b.at(0, 0, 1, 0) = amplitude * half_i;
  b.at(0, 0, -1, 0) = -amplitude * half_i;
  b.at(1, 2, 0, 0) = -amplitude * half_i;
  b.at(1, -2, 0, 0) = amplitude * half_i;
  b.set_divergence_free(true);
  return b;
}

namespace {

VectorField draw_solenoidal(const Grid& grid, double amplitude, double slope, int band,
                            std::mt19937_64& gen) {
  if (!(amplitude > 0.0)) {
    throw std::invalid_argument("random_solenoidal: amplitude must be > 0");
  }
  if (band < 1 || 3 * band > grid.points_per_axis()) {
    throw std::invalid_argument("random_solenoidal: band must satisfy 1 <= band <= N/3");
  }
  VectorField f(grid);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Draw a canonical representative per conjugate pair: lexicographically
  // positive k. Visiting modes in flattened order keeps the draw
  // deterministic for a given seed.
  for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const bool canonical = kx > 0 || (kx == 0 && ky > 0) || (kx == 0 && ky == 0 && kz > 0);
    if (!canonical) return;
    if (std::abs(kx) > band || std::abs(ky) > band || std::abs(kz) > band) return;
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    const double damp = std::pow(k2, -0.5 * slope);
    const std::size_t mirror = grid.index_of(-kx, -ky, grid.extent(2) == 1 ? 0 : -kz);
    for (int c = 0; c < 3; ++c) {
      const Complex v(normal(gen), normal(gen));
      f.component(c)[idx] = damp * v;
      f.component(c)[mirror] = damp * std::conj(v);
    }
  });
  VectorField out = leray_project(f);
  const double norm = l2_norm(out);
  if (norm > 0.0) scale(out, amplitude / norm);
  return out;
}

}  // namespace

VectorField random_solenoidal(const Grid& grid, double amplitude, double slope, int band,
                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return draw_solenoidal(grid, amplitude, slope, band, gen);
}

std::pair<VectorField, VectorField> random_solenoidal_pair(const Grid& grid, double amplitude,
                                                           double slope, int band,
                                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  VectorField u = draw_solenoidal(grid, amplitude, slope, band, gen);
  VectorField b = draw_solenoidal(grid, amplitude, slope, band, gen);
  return {std::move(u), std::move(b)};
}

std::pair<VectorField, VectorField> make_initial_fields(const Grid& grid, const DataSpec& spec) {
  switch (spec.kind) {
    case DataSpec::Kind::OrszagTang:
      return {orszag_tang_velocity(grid, spec.amplitude),
              orszag_tang_magnetic(grid, spec.amplitude)};
    case DataSpec::Kind::RandomPair:
      return random_solenoidal_pair(grid, spec.amplitude, spec.slope, spec.band, spec.seed);
    case DataSpec::Kind::SnapshotFile:
      break;
  }
  throw std::invalid_argument("make_initial_fields: snapshot data must be loaded by the caller");
}

}  // namespace hmhd
