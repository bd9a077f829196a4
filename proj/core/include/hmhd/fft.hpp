#pragma once

#include <array>
#include <vector>

#include "hmhd/field.hpp"
#include "hmhd/grid.hpp"

namespace hmhd {

// Complex-to-complex FFT pair on one grid. Analysis divides by the lattice
// size M so that coefficients are mode amplitudes; synthesis is the bare
// exponential sum. Plans are created deterministically (FFTW_ESTIMATE) and
// always execute on engine-owned buffers, so one engine must not be shared
// across threads; independent engines may run concurrently.
class FftEngine {
 public:
  explicit FftEngine(Grid grid);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  const Grid& grid() const { return grid_; }

  // Physical samples (flattened lattice order) -> spectral coefficients.
  void analyze(const std::vector<double>& samples, std::vector<Complex>& hat);
  // Spectral coefficients -> physical samples (real part of the sum).
  void synthesize(const std::vector<Complex>& hat, std::vector<double>& samples);

 private:
  Grid grid_;
  void* fwd_ = nullptr;  // fftw_plan
  void* bwd_ = nullptr;
  Complex* in_ = nullptr;  // fftw-allocated work arrays
  Complex* out_ = nullptr;
};

// Component-wise transforms with shape checking.
ScalarField to_spectral(FftEngine& fft, const std::vector<double>& samples);
VectorField to_spectral(FftEngine& fft, const std::array<std::vector<double>, 3>& samples);
std::vector<double> to_physical(FftEngine& fft, const ScalarField& f);
std::array<std::vector<double>, 3> to_physical(FftEngine& fft, const VectorField& f);

// max over lattice points of the Euclidean norm |f(x)|.
double max_pointwise_norm(FftEngine& fft, const VectorField& f);

}  // namespace hmhd
