#pragma once

#include <array>
#include <vector>

#include "hmhd/fft.hpp"
#include "hmhd/field.hpp"
#include "hmhd/filters.hpp"

namespace hmhd {

// Owns the FFT engine and scratch buffers for pseudo-spectral products.
// Quadratic terms are formed pointwise in physical space and truncated with
// the 2/3 rule on the way back, so they are exact convolutions for inputs
// band-limited to |k_i| <= N/3. Single-owner: use one workspace per thread.
class OperatorWorkspace {
 public:
  explicit OperatorWorkspace(Grid grid);
  OperatorWorkspace(const OperatorWorkspace&) = delete;
  OperatorWorkspace& operator=(const OperatorWorkspace&) = delete;

  const Grid& grid() const { return grid_; }
  FftEngine& fft() { return fft_; }
  const FrequencyFilter& dealias() const { return dealias_; }

 private:
  Grid grid_;
  FftEngine fft_;
  FrequencyFilter dealias_;
};

// Pure Fourier multipliers (no products, no workspace needed).
VectorField curl(const VectorField& f);
ScalarField divergence(const VectorField& f);
VectorField gradient(const ScalarField& f);
// d/dx_axis, applied component-wise.
VectorField partial_derivative(const VectorField& f, int axis);
ScalarField partial_derivative(const ScalarField& f, int axis);

// Dealiased pointwise products.
ScalarField multiply(OperatorWorkspace& ws, const ScalarField& f, const ScalarField& g);
ScalarField dot_product(OperatorWorkspace& ws, const VectorField& f, const VectorField& g);
VectorField cross_product(OperatorWorkspace& ws, const VectorField& f, const VectorField& g);

// Physical samples of a field together with its first derivatives
// (a discrete 1-jet). Entries for the suppressed z axis stay empty in the
// 2.5-D mode. Lets the time-stepper share transforms across the four
// quadratic terms of the system.
struct PhysicalJet {
  std::array<std::vector<double>, 3> value;
  std::array<std::array<std::vector<double>, 3>, 3> deriv;  // deriv[axis][comp]
};
PhysicalJet physical_jet(OperatorWorkspace& ws, const VectorField& f);
// (a . grad) f assembled from precomputed jets (a.value against f.deriv).
VectorField advect_from_jets(OperatorWorkspace& ws, const PhysicalJet& a,
                             const PhysicalJet& f);

// (a . grad) f. The advecting field a should be divergence-free when the
// result is meant to be a transport term; nothing enforces that here.
VectorField advect(OperatorWorkspace& ws, const VectorField& a, const VectorField& f);
// (b . grad) u, the field-line stretching term. Same kernel as advect with
// the roles swapped; kept as a named operation because callers read better.
VectorField stretch(OperatorWorkspace& ws, const VectorField& b, const VectorField& u);

// curl((curl B) x B), the Hall term.
VectorField hall_term(OperatorWorkspace& ws, const VectorField& B);

// Residuals of three exact identities of the Hall term:
//   orthogonality    <curl((curl B) x B), B> = 0
//   derivative_shift sum_i <d_i curl((curl B) x B), d_i B>
//                      = sum_i <(curl B) x d_i B, d_i curl B>
//   vector_identity  B x (curl B) = (1/2) grad|B|^2 - (B . grad) B
// The first two are scalar defects, the third an L2 defect. Each residual
// is divided by the magnitude of its own participating terms, so a uniform
// relative tolerance applies to fields of any size; scale reports
// max(||B||_{H^2}, 1) for context. Exactness needs B band-limited inside
// the dealias region.
struct HallIdentityResiduals {
  double orthogonality = 0.0;
  double derivative_shift = 0.0;
  double vector_identity = 0.0;
  double scale = 1.0;
};
HallIdentityResiduals hall_identity_residuals(OperatorWorkspace& ws, const VectorField& B);

// Pressure recovered from the incompressibility constraint:
// -Laplace p = div((u . grad) u - (B . grad) B), zero-mean solution.
ScalarField compute_pressure(OperatorWorkspace& ws, const VectorField& u,
                             const VectorField& B);

}  // namespace hmhd
