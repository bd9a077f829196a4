#pragma once

#include <string>

#include "hmhd/field.hpp"
#include "hmhd/grid.hpp"

namespace hmhd {

// Index of the dyadic shell 2^l <= |k| < 2^{l+1} containing a nonzero
// wavenumber; the zero mode sits in the synthetic shell -1. Exact integer
// arithmetic: l = floor(log4 |k|^2).
int shell_of(long long k2);
// Largest shell index populated on the lattice.
int max_shell(const Grid& grid);

// Sharp spectral cutoffs. All membership tests run in exact integer
// arithmetic on |k|^2 (the ball radius is squared once in double, which is
// exact for any radius of interest).
class FrequencyFilter {
 public:
  enum class Kind { FriedrichsBall, DealiasTwoThirds, DyadicShell };

  // Keep modes with |k| <= radius.
  static FrequencyFilter friedrichs_ball(double radius);
  // Keep modes with 3*|k_i| <= N on every axis (the 2/3 rule).
  static FrequencyFilter dealias_two_thirds();
  // Keep the dyadic shell l >= 0, or the zero mode for l = -1.
  static FrequencyFilter dyadic_shell(int l);

  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  int shell() const { return shell_; }
  std::string description() const;

  bool keeps(int n_axis, int kx, int ky, int kz) const;

 private:
  FrequencyFilter(Kind kind, double radius, int shell)
      : kind_(kind), radius_(radius), shell_(shell) {}

  Kind kind_;
  double radius_ = 0.0;
  int shell_ = 0;
};

// Zero every coefficient outside the filter's kept set.
ScalarField apply_filter(const ScalarField& f, const FrequencyFilter& filter);
VectorField apply_filter(const VectorField& f, const FrequencyFilter& filter);
// Same without the copy, for hot paths.
void filter_in_place(ScalarField& f, const FrequencyFilter& filter);
void filter_in_place(VectorField& f, const FrequencyFilter& filter);

// Largest coefficient magnitude outside the kept set (0 for a field
// supported inside it).
double residual_outside(const VectorField& f, const FrequencyFilter& filter);

}  // namespace hmhd
