#include "hmhd/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace hmhd {

namespace {

// The FFTW planner mutates global state; serialize plan create/destroy.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftEngine::FftEngine(Grid grid) : grid_(std::move(grid)) {
  const auto m = grid_.size();
  in_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  out_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  std::lock_guard<std::mutex> lock(planner_mutex());
  const int n = grid_.points_per_axis();
  if (grid_.dim() == 2) {
    fwd_ = fftw_plan_dft_2d(n, n, as_fftw(in_), as_fftw(out_), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(n, n, as_fftw(in_), as_fftw(out_), FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    fwd_ = fftw_plan_dft_3d(n, n, n, as_fftw(in_), as_fftw(out_), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_3d(n, n, n, as_fftw(in_), as_fftw(out_), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (fwd_ == nullptr || bwd_ == nullptr) {
    throw std::runtime_error("fft: plan creation failed");
  }
}

FftEngine::~FftEngine() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(in_);
  fftw_free(out_);
}

void FftEngine::analyze(const std::vector<double>& samples, std::vector<Complex>& hat) {
  const auto m = grid_.size();
  if (samples.size() != m) {
    throw std::invalid_argument("fft: sample count " + std::to_string(samples.size()) +
                                " does not match lattice size " + std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) in_[i] = Complex(samples[i], 0.0);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  hat.resize(m);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) hat[i] = out_[i] * inv;
}

void FftEngine::synthesize(const std::vector<Complex>& hat, std::vector<double>& samples) {
  const auto m = grid_.size();
  if (hat.size() != m) {
    throw std::invalid_argument("fft: coefficient count " + std::to_string(hat.size()) +
                                " does not match lattice size " + std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) in_[i] = hat[i];
  fftw_execute(static_cast<fftw_plan>(bwd_));
  samples.resize(m);
  for (std::size_t i = 0; i < m; ++i) samples[i] = out_[i].real();
}

ScalarField to_spectral(FftEngine& fft, const std::vector<double>& samples) {
  ScalarField f(fft.grid());
  fft.analyze(samples, f.hat());
  return f;
}

VectorField to_spectral(FftEngine& fft, const std::array<std::vector<double>, 3>& samples) {
  VectorField f(fft.grid());
  for (int c = 0; c < 3; ++c) fft.analyze(samples[static_cast<std::size_t>(c)], f.component(c));
  return f;
}

std::vector<double> to_physical(FftEngine& fft, const ScalarField& f) {
  std::vector<double> samples;
  fft.synthesize(f.hat(), samples);
  return samples;
}

std::array<std::vector<double>, 3> to_physical(FftEngine& fft, const VectorField& f) {
  std::array<std::vector<double>, 3> samples;
  for (int c = 0; c < 3; ++c) fft.synthesize(f.component(c), samples[static_cast<std::size_t>(c)]);
  return samples;
}

double max_pointwise_norm(FftEngine& fft, const VectorField& f) {
  const auto samples = to_physical(fft, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples[0].size(); ++i) {
    const double s = samples[0][i] * samples[0][i] + samples[1][i] * samples[1][i] +
                     samples[2][i] * samples[2][i];
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

}  // namespace hmhd
