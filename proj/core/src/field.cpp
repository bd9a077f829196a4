#include "hmhd/field.hpp"

#include <algorithm>
#include <cmath>

namespace hmhd {

ScalarField::ScalarField(Grid grid) : grid_(std::move(grid)), hat_(grid_.size()) {}

VectorField::VectorField(Grid grid) : grid_(std::move(grid)) {
  for (auto& c : hat_) c.assign(grid_.size(), Complex(0.0, 0.0));
}

void add_scaled(VectorField& dest, const VectorField& src, double a) {
  for (int c = 0; c < 3; ++c) {
    auto& d = dest.component(c);
    const auto& s = src.component(c);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += a * s[i];
  }
}

void scale(VectorField& f, double a) {
  for (int c = 0; c < 3; ++c) {
    for (auto& v : f.component(c)) v *= a;
  }
}

double l2_norm(const ScalarField& f) {
  double sum = 0.0;
  for (const auto& v : f.hat()) sum += std::norm(v);
  return std::sqrt(f.grid().volume() * sum);
}

double l2_norm(const VectorField& f) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.component(c)) sum += std::norm(v);
  }
  return std::sqrt(f.grid().volume() * sum);
}

double l2_inner(const VectorField& f, const VectorField& g) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& a = f.component(c);
    const auto& b = g.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
  }
  return f.grid().volume() * sum;
}

double l2_distance(const VectorField& f, const VectorField& g) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& a = f.component(c);
    const auto& b = g.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  }
  return std::sqrt(f.grid().volume() * sum);
}

double divergence_residual(const VectorField& f) {
  double worst = 0.0;
  const auto& fx = f.component(0);
  const auto& fy = f.component(1);
  const auto& fz = f.component(2);
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const Complex div = static_cast<double>(kx) * fx[idx] +
                        static_cast<double>(ky) * fy[idx] +
                        static_cast<double>(kz) * fz[idx];
    worst = std::max(worst, std::abs(div));
  });
  const double scale = max_coefficient(f);
  return scale > 0.0 ? worst / scale : 0.0;
}

double max_coefficient(const ScalarField& f) {
  double m = 0.0;
  for (const auto& v : f.hat()) m = std::max(m, std::abs(v));
  return m;
}

double max_coefficient(const VectorField& f) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.component(c)) m = std::max(m, std::abs(v));
  }
  return m;
}

double conjugate_symmetry_residual(const VectorField& f) {
  const Grid& g = f.grid();
  const int half = g.points_per_axis() / 2;
  const auto mirror = [half](int k) { return k == half ? half : -k; };
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& a = f.component(c);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
      const std::size_t j = g.index_of(mirror(kx), mirror(ky), mirror(kz));
      worst = std::max(worst, std::abs(a[idx] - std::conj(a[j])));
    });
  }
  return worst;
}

bool all_finite(const VectorField& f) {
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.component(c)) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

}  // namespace hmhd
