#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "hmhd/field.hpp"

namespace hmhd {

// Orszag-Tang vortex on the 2*pi box, the standard deterministic start.
// Coefficients are set directly in spectral space, so the fields are
// exactly solenoidal and supported on |k| <= 2:
//   u = amplitude * (-sin y,  sin x,  0)
//   B = amplitude * (-sin y,  sin 2x, 0)
// On a 3-D grid the same planar fields are embedded at k_z = 0.
VectorField orszag_tang_velocity(const Grid& grid, double amplitude);
VectorField orszag_tang_magnetic(const Grid& grid, double amplitude);

// Random solenoidal draw: independent Gaussian coefficients on modes with
// |k_i| <= band on every axis (k = 0 excluded), magnitudes damped by
// |k|^{-slope}, mirrored for conjugate symmetry, projected to be
// divergence-free, then rescaled to the requested L2 norm. Deterministic in
// (seed, grid): modes are visited in flattened lattice order.
VectorField random_solenoidal(const Grid& grid, double amplitude, double slope, int band,
                              std::uint64_t seed);

// u and B drawn from one generator stream (u first).
std::pair<VectorField, VectorField> random_solenoidal_pair(const Grid& grid, double amplitude,
                                                           double slope, int band,
                                                           std::uint64_t seed);

// Initial-data selector shared by experiments and the config layer.
struct DataSpec {
  enum class Kind { OrszagTang, RandomPair, SnapshotFile };
  Kind kind = Kind::OrszagTang;
  double amplitude = 1.0;
  double slope = 2.0;
  int band = 5;
  std::uint64_t seed = 1;
  std::string path;  // snapshot source, Kind::SnapshotFile only
};

// Builds (u0, B0) for the synthetic kinds. Snapshot sourcing happens at the
// experiment layer; passing Kind::SnapshotFile here is an error.
std::pair<VectorField, VectorField> make_initial_fields(const Grid& grid, const DataSpec& spec);

}  // namespace hmhd
