#include "hmhd/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hmhd {

int effective_dim(DimMode mode) {
  return mode == DimMode::TwoPointFiveD ? 2 : 3;
}

Grid::Grid(DimMode mode, int points_per_axis) : mode_(mode), n_(points_per_axis) {
  if (n_ < 8 || !std::has_single_bit(static_cast<unsigned>(n_))) {
    throw std::invalid_argument("grid: points per axis must be a power of two >= 8, got " +
                                std::to_string(n_));
  }
  dim_ = effective_dim(mode_);
  extent_ = {n_, n_, dim_ == 3 ? n_ : 1};
  size_ = static_cast<std::size_t>(extent_[0]) * extent_[1] * extent_[2];
  kaxis_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    kaxis_[static_cast<std::size_t>(i)] = i <= n_ / 2 ? i : i - n_;
  }
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double Grid::volume() const {
  return std::pow(2.0 * std::numbers::pi, static_cast<double>(dim_));
}

std::array<int, 3> Grid::wavenumber(std::size_t idx) const {
  const auto ez = static_cast<std::size_t>(extent_[2]);
  const auto ey = static_cast<std::size_t>(extent_[1]);
  const auto iz = idx % ez;
  const auto iy = (idx / ez) % ey;
  const auto ix = idx / (ez * ey);
  return {kaxis_[ix], kaxis_[iy], extent_[2] == 1 ? 0 : kaxis_[iz]};
}

long long Grid::k2(std::size_t idx) const {
  const auto k = wavenumber(idx);
  return static_cast<long long>(k[0]) * k[0] + static_cast<long long>(k[1]) * k[1] +
         static_cast<long long>(k[2]) * k[2];
}

std::size_t Grid::index_of(int kx, int ky, int kz) const {
  const auto fold = [this](int k) {
    if (k < -n_ / 2 + 1 || k > n_ / 2) {
      throw std::out_of_range("grid: wavenumber " + std::to_string(k) +
                              " outside {-N/2+1, ..., N/2} for N = " + std::to_string(n_));
    }
    return static_cast<std::size_t>(k >= 0 ? k : k + n_);
  };
  if (extent_[2] == 1 && kz != 0) {
    throw std::out_of_range("grid: kz must be 0 on a 2.5-D grid");
  }
  const std::size_t iz = extent_[2] == 1 ? 0 : fold(kz);
  return (fold(kx) * extent_[1] + fold(ky)) * extent_[2] + iz;
}

long long Grid::max_k2() const {
  const long long half = n_ / 2;
  return half * half * dim_;
}

}  // namespace hmhd
