#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hmhd {

// Lattice layout over the periodic box [0, 2*pi)^d.
enum class DimMode : std::uint8_t {
  // Three-component fields on an N x N lattice, no z dependence. Curl and
  // the Hall term keep their full three-dimensional vector form; every
  // z-derivative vanishes identically.
  TwoPointFiveD = 0,
  // Full N x N x N lattice.
  ThreeD = 1,
};

// Number of lattice axes actually resolved (2 or 3).
int effective_dim(DimMode mode);

// Uniform periodic grid. N points per axis, N a power of two, N >= 8.
// Wavenumbers per resolved axis run over {-N/2+1, ..., N/2}; the unresolved
// z axis in the 2.5-D mode carries the single wavenumber 0. Flattened
// storage is row-major with x slowest: idx = (ix*Ny + iy)*Nz + iz.
class Grid {
 public:
  Grid(DimMode mode, int points_per_axis);

  DimMode dim_mode() const { return mode_; }
  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  // Lattice extent along an axis: N for resolved axes, 1 for the
  // suppressed z axis in 2.5-D mode.
  int extent(int axis) const { return extent_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return size_; }

  double spacing() const;  // 2*pi / N
  double volume() const;   // (2*pi)^dim

  // Wavenumber carried by lattice index i along a resolved axis
  // (FFT order: 0, 1, ..., N/2, -N/2+1, ..., -1).
  int axis_wavenumber(int i) const { return kaxis_[static_cast<std::size_t>(i)]; }
  // Integer wavenumber triple of a flattened index (kz = 0 in 2.5-D mode).
  std::array<int, 3> wavenumber(std::size_t idx) const;
  // |k|^2 as an exact integer.
  long long k2(std::size_t idx) const;
  // Flattened index of a wavenumber triple. kz must be 0 in 2.5-D mode.
  std::size_t index_of(int kx, int ky, int kz) const;
  // Largest |k|^2 present on the lattice.
  long long max_k2() const;

  bool operator==(const Grid& other) const {
    return mode_ == other.mode_ && n_ == other.n_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  DimMode mode_;
  int n_;
  int dim_;
  std::array<int, 3> extent_;
  std::size_t size_;
  std::vector<int> kaxis_;
};

// Visit every lattice mode in flattened order: f(idx, kx, ky, kz).
template <class F>
inline void for_each_mode(const Grid& g, F&& f) {
  const int ex = g.extent(0);
  const int ey = g.extent(1);
  const int ez = g.extent(2);
  std::size_t idx = 0;
  for (int ix = 0; ix < ex; ++ix) {
    const int kx = g.axis_wavenumber(ix);
    for (int iy = 0; iy < ey; ++iy) {
      const int ky = g.axis_wavenumber(iy);
      for (int iz = 0; iz < ez; ++iz, ++idx) {
        f(idx, kx, ky, g.axis_wavenumber(iz));
      }
    }
  }
}

}  // namespace hmhd
