#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "hmhd/errors.hpp"
#include "hmhd/fft.hpp"
#include "hmhd/field.hpp"
#include "hmhd/filters.hpp"
#include "hmhd/grid.hpp"
#include "hmhd/snapshot.hpp"
#include "hmhd/spectral_ops.hpp"

using namespace hmhd;

namespace {

std::vector<double> sampled(const Grid& g, double (*fn)(double, double, double)) {
  std::vector<double> out(g.size());
  const double h = g.spacing();
  std::size_t idx = 0;
  for (int ix = 0; ix < g.extent(0); ++ix) {
    for (int iy = 0; iy < g.extent(1); ++iy) {
      for (int iz = 0; iz < g.extent(2); ++iz, ++idx) {
        out[idx] = fn(h * ix, h * iy, h * iz);
      }
    }
  }
  return out;
}

VectorField random_symmetric_field(const Grid& g, std::uint64_t seed) {
  // Random real samples analyzed per component: automatically conjugate
  // symmetric, full spectrum.
  FftEngine fft(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  VectorField f(g);
  std::vector<double> samples(g.size());
  for (int c = 0; c < 3; ++c) {
    for (double& s : samples) s = dist(rng);
    fft.analyze(samples, f.component(c));
  }
  return f;
}

}  // namespace

TEST_CASE("grid validates lattice size") {
  CHECK_THROWS_AS(Grid(DimMode::TwoPointFiveD, 12), std::invalid_argument);
  CHECK_THROWS_AS(Grid(DimMode::TwoPointFiveD, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid(DimMode::ThreeD, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(DimMode::ThreeD, -8), std::invalid_argument);
  CHECK_NOTHROW(Grid(DimMode::TwoPointFiveD, 8));
  CHECK_NOTHROW(Grid(DimMode::ThreeD, 16));
}

TEST_CASE("grid wavenumber layout") {
  const Grid g(DimMode::TwoPointFiveD, 8);
  CHECK(g.dim() == 2);
  CHECK(g.size() == 64);
  CHECK(g.extent(2) == 1);
  const int expected[] = {0, 1, 2, 3, 4, -3, -2, -1};
  for (int i = 0; i < 8; ++i) CHECK(g.axis_wavenumber(i) == expected[i]);

  // index_of and wavenumber are inverse to each other on every mode.
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    CHECK(g.index_of(kx, ky, kz) == idx);
    const auto w = g.wavenumber(idx);
    CHECK(w[0] == kx);
    CHECK(w[1] == ky);
    CHECK(w[2] == kz);
    CHECK(g.k2(idx) == static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky);
  });
  CHECK(g.max_k2() == 32);  // (4, 4)

  const Grid g3(DimMode::ThreeD, 8);
  CHECK(g3.dim() == 3);
  CHECK(g3.size() == 512);
  CHECK(g3.max_k2() == 48);
  CHECK_THROWS_AS(g.index_of(0, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(g.index_of(9, 0, 0), std::out_of_range);
}

TEST_CASE("analysis of sin x lands on the two expected coefficients") {
  for (const DimMode mode : {DimMode::TwoPointFiveD, DimMode::ThreeD}) {
    const Grid g(mode, 16);
    FftEngine fft(g);
    const auto samples = sampled(g, [](double x, double, double) { return std::sin(x); });
    std::vector<Complex> hat;
    fft.analyze(samples, hat);
    // sin x = (i/2) e^{-ix} - (i/2) e^{ix} with the amplitude convention.
    CHECK(std::abs(hat[g.index_of(1, 0, 0)] - Complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(hat[g.index_of(-1, 0, 0)] - Complex(0.0, 0.5)) < 1e-14);
    double rest = 0.0;
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
      if (std::abs(kx) == 1 && ky == 0 && kz == 0) return;
      rest = std::max(rest, std::abs(hat[idx]));
    });
    CHECK(rest < 1e-14);
  }
}

TEST_CASE("analysis of a constant is the zero mode alone") {
  const Grid g(DimMode::TwoPointFiveD, 8);
  FftEngine fft(g);
  std::vector<double> samples(g.size(), 2.75);
  std::vector<Complex> hat;
  fft.analyze(samples, hat);
  CHECK(std::abs(hat[g.index_of(0, 0, 0)] - Complex(2.75, 0.0)) < 1e-14);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    if (kx == 0 && ky == 0 && kz == 0) return;
    CHECK(std::abs(hat[idx]) < 1e-14);
  });
}

TEST_CASE("synthesis inverts analysis on random samples") {
  for (const DimMode mode : {DimMode::TwoPointFiveD, DimMode::ThreeD}) {
    const Grid g(mode, 16);
    FftEngine fft(g);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;
    std::vector<double> samples(g.size());
    for (double& s : samples) s = dist(rng);
    std::vector<Complex> hat;
    std::vector<double> back;
    fft.analyze(samples, hat);
    fft.synthesize(hat, back);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      worst = std::max(worst, std::abs(samples[i] - back[i]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("coefficient sums satisfy the lattice Parseval identity") {
  // (1/M) sum_x f(x)^2 = sum_k |hat f(k)|^2 pins the normalization pair:
  // analysis carries 1/M, synthesis carries none.
  const Grid g(DimMode::TwoPointFiveD, 32);
  FftEngine fft(g);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  std::vector<double> samples(g.size());
  for (double& s : samples) s = dist(rng);
  std::vector<Complex> hat;
  fft.analyze(samples, hat);
  double physical = 0.0;
  for (const double s : samples) physical += s * s;
  physical /= static_cast<double>(g.size());
  double spectral = 0.0;
  for (const Complex& c : hat) spectral += std::norm(c);
  CHECK(physical == doctest::Approx(spectral).epsilon(1e-12));

  // l2_norm carries the box volume on top of the coefficient sum.
  ScalarField f(g);
  f.hat() = hat;
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(g.volume() * spectral)).epsilon(1e-12));
}

TEST_CASE("conjugate symmetry of analyzed real data, and its residual") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  VectorField f = random_symmetric_field(g, 3);
  CHECK(conjugate_symmetry_residual(f) < 1e-13);
  f.at(0, 2, 1, 0) += Complex(0.5, 0.25);  // break the mirror on one mode
  CHECK(conjugate_symmetry_residual(f) > 0.1);
}

TEST_CASE("shell indices partition the lattice") {
  CHECK(shell_of(1) == 0);
  CHECK(shell_of(2) == 0);
  CHECK(shell_of(3) == 0);
  CHECK(shell_of(4) == 1);
  CHECK(shell_of(15) == 1);
  CHECK(shell_of(16) == 2);
  CHECK(shell_of(63) == 2);
  CHECK(shell_of(64) == 3);

  const Grid g(DimMode::ThreeD, 16);
  const int top = max_shell(g);
  CHECK(top == shell_of(g.max_k2()));
  for_each_mode(g, [&](std::size_t, int kx, int ky, int kz) {
    int kept = 0;
    for (int l = -1; l <= top; ++l) {
      if (FrequencyFilter::dyadic_shell(l).keeps(16, kx, ky, kz)) ++kept;
    }
    CHECK(kept == 1);
  });
}

TEST_CASE("filter membership is exact integer arithmetic") {
  const int n = 12 * 8;  // N = 96 so N/3 = 32 exactly
  const auto ball = FrequencyFilter::friedrichs_ball(5.0);
  CHECK(ball.keeps(n, 3, 4, 0));    // |k|^2 = 25
  CHECK(ball.keeps(n, 5, 0, 0));    // boundary included
  CHECK(!ball.keeps(n, 3, 4, 1));   // 26 > 25
  CHECK(!ball.keeps(n, 5, 1, 0));

  const auto dealias = FrequencyFilter::dealias_two_thirds();
  CHECK(dealias.keeps(n, 32, -32, 32));
  CHECK(!dealias.keeps(n, 33, 0, 0));
  CHECK(!dealias.keeps(n, 0, -33, 0));
  // N = 8: the rule keeps |k_i| <= 2
  CHECK(dealias.keeps(8, 2, 2, 0));
  CHECK(!dealias.keeps(8, 3, 0, 0));
}

TEST_CASE("apply_filter zeroes exactly the complement") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  VectorField f = random_symmetric_field(g, 9);
  const auto ball = FrequencyFilter::friedrichs_ball(3.0);
  const VectorField cut = apply_filter(f, ball);
  CHECK(residual_outside(cut, ball) == 0.0);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    for (int c = 0; c < 3; ++c) {
      if (ball.keeps(16, kx, ky, kz)) {
        CHECK(cut.component(c)[idx] == f.component(c)[idx]);
      } else {
        CHECK(cut.component(c)[idx] == Complex(0.0, 0.0));
      }
    }
  });
  // In-place variant produces the identical field.
  VectorField inplace = f;
  filter_in_place(inplace, ball);
  for (int c = 0; c < 3; ++c) CHECK(inplace.component(c) == cut.component(c));
}

TEST_CASE("leray projection kills divergence and is an orthogonal idempotent") {
  const Grid g(DimMode::ThreeD, 8);
  VectorField f = random_symmetric_field(g, 17);
  const VectorField p = leray_project(f);
  CHECK(p.divergence_free());
  CHECK(divergence_residual(p) < 1e-13);

  // Idempotent.
  const VectorField pp = leray_project(p);
  double drift = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < p.component(c).size(); ++i) {
      drift = std::max(drift, std::abs(pp.component(c)[i] - p.component(c)[i]));
    }
  }
  CHECK(drift < 1e-14);

  // Orthogonal: <Pf, f - Pf> = 0 up to roundoff.
  VectorField residual = f;
  add_scaled(residual, p, -1.0);
  CHECK(std::abs(l2_inner(p, residual)) < 1e-10 * l2_norm(f) * l2_norm(f));

  // The zero mode passes through untouched.
  VectorField mean(g);
  mean.at(0, 0, 0, 0) = 1.5;
  mean.at(1, 0, 0, 0) = -0.5;
  const VectorField pm = leray_project(mean);
  CHECK(pm.at(0, 0, 0, 0) == Complex(1.5, 0.0));
  CHECK(pm.at(1, 0, 0, 0) == Complex(-0.5, 0.0));
}

TEST_CASE("fractional laplacian is the |k|^(2 alpha) multiplier") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  ScalarField f(g);
  f.at(1, 2, 0) = Complex(1.0, -2.0);  // |k|^2 = 5
  f.at(0, 0, 0) = Complex(3.0, 0.0);
  const ScalarField lap = fractional_laplacian(f, 0.7);
  CHECK(std::abs(lap.at(1, 2, 0) - std::pow(5.0, 0.7) * Complex(1.0, -2.0)) < 1e-14);
  CHECK(lap.at(0, 0, 0) == Complex(0.0, 0.0));  // zero mode maps to zero
  CHECK_THROWS_AS(fractional_laplacian(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fractional_laplacian(f, -1.0), std::invalid_argument);

  // alpha = 1 against the classical symbol on a random field.
  VectorField v = random_symmetric_field(g, 23);
  const VectorField lv = fractional_laplacian(v, 1.0);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int) {
    const double k2 = double(kx) * kx + double(ky) * ky;
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(lv.component(c)[idx] - k2 * v.component(c)[idx]) <= 1e-12 * (1.0 + k2));
    }
  });
}

TEST_CASE("fractional seminorm agrees with norm of the half-power operator") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  const VectorField v = random_symmetric_field(g, 31);
  for (const double alpha : {0.6, 1.0, 1.7}) {
    const double direct = fractional_seminorm(v, alpha);
    const double composed = l2_norm(fractional_laplacian(v, alpha / 2.0));
    CHECK(direct == doctest::Approx(composed).epsilon(1e-12));
  }
  // Sobolev-weighted variant against an explicit sum.
  const double sigma = 2.5;
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int) {
    const double k2 = double(kx) * kx + double(ky) * ky;
    for (int c = 0; c < 3; ++c) {
      sum += std::pow(k2, 1.0) * std::pow(1.0 + k2, sigma) * std::norm(v.component(c)[idx]);
    }
  });
  CHECK(fractional_seminorm_sobolev(v, 1.0, sigma) ==
        doctest::Approx(std::sqrt(g.volume() * sum)).epsilon(1e-12));
}

TEST_CASE("snapshot files round-trip bit for bit") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hmhd_snapshot_test";
  fs::create_directories(dir);
  const Grid g(DimMode::TwoPointFiveD, 16);
  const VectorField u = random_symmetric_field(g, 5);
  const VectorField B = random_symmetric_field(g, 6);

  const fs::path a = dir / "a.hmhd";
  const fs::path b = dir / "b.hmhd";
  write_snapshot(a, u, B, 1.25, 0.875);
  const Snapshot snap = read_snapshot(a);
  CHECK(snap.t == 1.25);
  CHECK(snap.alpha == 0.875);
  CHECK(snap.u.grid() == g);
  for (int c = 0; c < 3; ++c) {
    CHECK(snap.u.component(c) == u.component(c));
    CHECK(snap.B.component(c) == B.component(c));
  }

  // Writing the read-back state reproduces the file byte for byte.
  write_snapshot(b, snap.u, snap.B, snap.t, snap.alpha);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(fa)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(fb)), {});
  CHECK(bytes_a == bytes_b);
  CHECK(bytes_a.size() == 26 + 2 * 3 * g.size() * 16);

  fs::remove_all(dir);
}

TEST_CASE("snapshot reader rejects malformed files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hmhd_snapshot_bad";
  fs::create_directories(dir);
  const Grid g(DimMode::TwoPointFiveD, 8);
  const VectorField u(g), B(g);
  const fs::path good = dir / "good.hmhd";
  write_snapshot(good, u, B, 0.0, 1.0);

  CHECK_THROWS_AS(read_snapshot(dir / "missing.hmhd"), IoError);

  {  // wrong magic
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    bytes[0] = 'X';
    std::ofstream(dir / "magic.hmhd", std::ios::binary) << bytes;
    CHECK_THROWS_AS(read_snapshot(dir / "magic.hmhd"), IoError);
  }
  {  // truncated payload
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    bytes.resize(bytes.size() - 7);
    std::ofstream(dir / "short.hmhd", std::ios::binary) << bytes;
    CHECK_THROWS_AS(read_snapshot(dir / "short.hmhd"), IoError);
  }
  {  // trailing junk
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    bytes += "zz";
    std::ofstream(dir / "long.hmhd", std::ios::binary) << bytes;
    CHECK_THROWS_AS(read_snapshot(dir / "long.hmhd"), IoError);
  }
  {  // absurd lattice size
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    bytes[6] = 13;  // N = 13, not a power of two
    std::ofstream(dir / "badn.hmhd", std::ios::binary) << bytes;
    CHECK_THROWS_AS(read_snapshot(dir / "badn.hmhd"), IoError);
  }
  fs::remove_all(dir);
}

TEST_CASE("divergence residual separates solenoidal from generic fields") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  CHECK(divergence_residual(VectorField(g)) == 0.0);  // zero field
  VectorField f = random_symmetric_field(g, 77);
  CHECK(divergence_residual(f) > 0.01);
  CHECK(divergence_residual(leray_project(f)) < 1e-13);
}
