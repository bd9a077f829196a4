#pragma once

#include "hmhd/field.hpp"

namespace hmhd {

// (-Laplace)^alpha as the Fourier multiplier |k|^(2*alpha). Requires
// alpha > 0; the zero mode maps to zero.
ScalarField fractional_laplacian(const ScalarField& f, double alpha);
VectorField fractional_laplacian(const VectorField& f, double alpha);

// L2-orthogonal projection onto divergence-free fields:
// hat(k) -> hat(k) - k (k . hat(k)) / |k|^2. The zero mode is untouched.
VectorField leray_project(const VectorField& f);

// ||Lambda^alpha f||_{L2} with Lambda = (-Laplace)^(1/2). Cheaper than
// composing fractional_laplacian with l2_norm; the dissipation accounting
// evaluates this once per stage.
double fractional_seminorm(const VectorField& f, double alpha);
// Same with the Sobolev weight (1 + |k|^2)^sigma applied under the sum:
// ||Lambda^alpha f||_{H^sigma}.
double fractional_seminorm_sobolev(const VectorField& f, double alpha, double sigma);

}  // namespace hmhd
