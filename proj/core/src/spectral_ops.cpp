#include "hmhd/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace hmhd {

namespace {

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("fractional_laplacian: alpha must be > 0");
  }
}

}  // namespace

ScalarField fractional_laplacian(const ScalarField& f, double alpha) {
  require_positive_alpha(alpha);
  ScalarField out = f;
  auto& a = out.hat();
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] *= std::pow(static_cast<double>(g.k2(i)), alpha);
  }
  return out;
}

VectorField fractional_laplacian(const VectorField& f, double alpha) {
  require_positive_alpha(alpha);
  VectorField out = f;
  const Grid& g = f.grid();
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    const double mult = std::pow(k2, alpha);
    for (int c = 0; c < 3; ++c) out.component(c)[idx] *= mult;
  });
  return out;
}

VectorField leray_project(const VectorField& f) {
  VectorField out = f;
  auto& fx = out.component(0);
  auto& fy = out.component(1);
  auto& fz = out.component(2);
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    if (k2 == 0.0) return;
    const Complex kdot = (static_cast<double>(kx) * fx[idx] +
                          static_cast<double>(ky) * fy[idx] +
                          static_cast<double>(kz) * fz[idx]) / k2;
    fx[idx] -= static_cast<double>(kx) * kdot;
    fy[idx] -= static_cast<double>(ky) * kdot;
    fz[idx] -= static_cast<double>(kz) * kdot;
  });
  out.set_divergence_free(true);
  return out;
}

double fractional_seminorm(const VectorField& f, double alpha) {
  require_positive_alpha(alpha);
  double sum = 0.0;
  const auto& fx = f.component(0);
  const auto& fy = f.component(1);
  const auto& fz = f.component(2);
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    const double w = std::pow(k2, alpha);
    sum += w * (std::norm(fx[idx]) + std::norm(fy[idx]) + std::norm(fz[idx]));
  });
  return std::sqrt(f.grid().volume() * sum);
}

double fractional_seminorm_sobolev(const VectorField& f, double alpha, double sigma) {
  require_positive_alpha(alpha);
  double sum = 0.0;
  const auto& fx = f.component(0);
  const auto& fy = f.component(1);
  const auto& fz = f.component(2);
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    const double w = std::pow(k2, alpha) * std::pow(1.0 + k2, sigma);
    sum += w * (std::norm(fx[idx]) + std::norm(fy[idx]) + std::norm(fz[idx]));
  });
  return std::sqrt(f.grid().volume() * sum);
}

}  // namespace hmhd
