#pragma once

#include <filesystem>

#include "hmhd/field.hpp"

namespace hmhd {

// On-disk state container, format "HMHD1":
//   bytes 0-3   magic "HMHD"
//   byte  4     format version (1)
//   byte  5     lattice layout (0 = 2.5-D, 1 = 3-D)
//   bytes 6-9   N, int32 little-endian
//   bytes 10-17 alpha, float64 little-endian
//   bytes 18-25 simulation time, float64 little-endian
//   then u and B: per field 3 components, per component the full lattice in
//   flattened order, each coefficient as (re, im) float64 little-endian.
// Coefficients are written verbatim, so write/read round-trips bit-exactly.
struct Snapshot {
  VectorField u;
  VectorField B;
  double t = 0.0;
  double alpha = 1.0;
};

void write_snapshot(const std::filesystem::path& path, const VectorField& u,
                    const VectorField& B, double t, double alpha);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace hmhd
