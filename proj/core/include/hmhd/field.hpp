#pragma once

#include <array>
#include <complex>
#include <vector>

#include "hmhd/grid.hpp"

namespace hmhd {

using Complex = std::complex<double>;

// Scalar field stored as Fourier coefficients over the full lattice.
// Convention: analysis carries the 1/M factor (M = lattice size), synthesis
// is the plain sum, so a coefficient equals the amplitude of its complex
// exponential. For real data coefficients obey hat(-k) = conj(hat(k)).
class ScalarField {
 public:
  explicit ScalarField(Grid grid);

  const Grid& grid() const { return grid_; }
  std::vector<Complex>& hat() { return hat_; }
  const std::vector<Complex>& hat() const { return hat_; }

  Complex& at(int kx, int ky, int kz) { return hat_[grid_.index_of(kx, ky, kz)]; }
  const Complex& at(int kx, int ky, int kz) const {
    return hat_[grid_.index_of(kx, ky, kz)];
  }

 private:
  Grid grid_;
  std::vector<Complex> hat_;
};

// Three-component vector field in spectral form. Always carries three
// components, also in the 2.5-D mode.
class VectorField {
 public:
  explicit VectorField(Grid grid);

  const Grid& grid() const { return grid_; }
  std::vector<Complex>& component(int c) { return hat_[static_cast<std::size_t>(c)]; }
  const std::vector<Complex>& component(int c) const {
    return hat_[static_cast<std::size_t>(c)];
  }

  Complex& at(int c, int kx, int ky, int kz) {
    return hat_[static_cast<std::size_t>(c)][grid_.index_of(kx, ky, kz)];
  }
  const Complex& at(int c, int kx, int ky, int kz) const {
    return hat_[static_cast<std::size_t>(c)][grid_.index_of(kx, ky, kz)];
  }

  // Tracks whether the field was produced by a solenoidal constructor
  // (projection, curl, filtered copy thereof). Informational; the measured
  // residual is divergence_residual().
  bool divergence_free() const { return divergence_free_; }
  void set_divergence_free(bool v) { divergence_free_ = v; }

 private:
  Grid grid_;
  std::array<std::vector<Complex>, 3> hat_;
  bool divergence_free_ = false;
};

// In-place linear algebra used by the time stepper.
void add_scaled(VectorField& dest, const VectorField& src, double a);  // dest += a*src
void scale(VectorField& f, double a);

// L2 norm over the box: ||f||^2 = (2*pi)^d * sum_k |hat(k)|^2.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
// Real L2 pairing <f, g> = (2*pi)^d * Re sum_k hat_f(k) conj(hat_g(k)).
double l2_inner(const VectorField& f, const VectorField& g);
// ||f - g|| without forming the difference field.
double l2_distance(const VectorField& f, const VectorField& g);

// max_k |k . hat(k)| / max_k |hat(k)|, or 0 for the zero field.
double divergence_residual(const VectorField& f);
// Largest coefficient magnitude (max over components for vectors).
double max_coefficient(const ScalarField& f);
double max_coefficient(const VectorField& f);
// Largest violation of hat(-k) = conj(hat(k)). Negation is taken on the
// lattice, so an axis wavenumber N/2 is its own mirror.
double conjugate_symmetry_residual(const VectorField& f);
bool all_finite(const VectorField& f);

}  // namespace hmhd
