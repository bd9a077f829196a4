#include "hmhd/filters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hmhd {

int shell_of(long long k2) {
  if (k2 < 0) throw std::invalid_argument("shell_of: negative |k|^2");
  if (k2 == 0) return -1;
  const int log2_k2 = std::bit_width(static_cast<unsigned long long>(k2)) - 1;
  return log2_k2 >> 1;
}

int max_shell(const Grid& grid) { return shell_of(grid.max_k2()); }

FrequencyFilter FrequencyFilter::friedrichs_ball(double radius) {
  if (!(radius >= 0.0)) {
    throw std::invalid_argument("filter: ball radius must be nonnegative");
  }
  return FrequencyFilter(Kind::FriedrichsBall, radius, 0);
}

FrequencyFilter FrequencyFilter::dealias_two_thirds() {
  return FrequencyFilter(Kind::DealiasTwoThirds, 0.0, 0);
}

FrequencyFilter FrequencyFilter::dyadic_shell(int l) {
  if (l < -1) throw std::invalid_argument("filter: shell index must be >= -1");
  return FrequencyFilter(Kind::DyadicShell, 0.0, l);
}

std::string FrequencyFilter::description() const {
  switch (kind_) {
    case Kind::FriedrichsBall:
      return "ball(|k| <= " + std::to_string(radius_) + ")";
    case Kind::DealiasTwoThirds:
      return "dealias(3|k_i| <= N)";
    case Kind::DyadicShell:
      return "shell(" + std::to_string(shell_) + ")";
  }
  return "?";
}

bool FrequencyFilter::keeps(int n_axis, int kx, int ky, int kz) const {
  const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky +
                       static_cast<long long>(kz) * kz;
  switch (kind_) {
    case Kind::FriedrichsBall:
      return static_cast<double>(k2) <= radius_ * radius_;
    case Kind::DealiasTwoThirds:
      return 3 * std::abs(kx) <= n_axis && 3 * std::abs(ky) <= n_axis &&
             3 * std::abs(kz) <= n_axis;
    case Kind::DyadicShell:
      return shell_of(k2) == shell_;
  }
  return false;
}

namespace {

template <class FieldT>
void zero_outside(FieldT& f, const FrequencyFilter& filter);

template <>
void zero_outside(ScalarField& f, const FrequencyFilter& filter) {
  const int n = f.grid().points_per_axis();
  auto& a = f.hat();
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    if (!filter.keeps(n, kx, ky, kz)) a[idx] = Complex(0.0, 0.0);
  });
}

template <>
void zero_outside(VectorField& f, const FrequencyFilter& filter) {
  const int n = f.grid().points_per_axis();
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    if (!filter.keeps(n, kx, ky, kz)) {
      for (int c = 0; c < 3; ++c) f.component(c)[idx] = Complex(0.0, 0.0);
    }
  });
}

}  // namespace

ScalarField apply_filter(const ScalarField& f, const FrequencyFilter& filter) {
  ScalarField out = f;
  zero_outside(out, filter);
  return out;
}

VectorField apply_filter(const VectorField& f, const FrequencyFilter& filter) {
  VectorField out = f;
  zero_outside(out, filter);
  return out;
}

void filter_in_place(ScalarField& f, const FrequencyFilter& filter) {
  zero_outside(f, filter);
}

void filter_in_place(VectorField& f, const FrequencyFilter& filter) {
  zero_outside(f, filter);
}

double residual_outside(const VectorField& f, const FrequencyFilter& filter) {
  const int n = f.grid().points_per_axis();
  double worst = 0.0;
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    if (!filter.keeps(n, kx, ky, kz)) {
      for (int c = 0; c < 3; ++c) {
        worst = std::max(worst, std::abs(f.component(c)[idx]));
      }
    }
  });
  return worst;
}

}  // namespace hmhd
