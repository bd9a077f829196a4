#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hmhd/field.hpp"
#include "hmhd/grid.hpp"
#include "hmhd/initial_data.hpp"
#include "hmhd/operators.hpp"
#include "hmhd/spectral_ops.hpp"
#include "oracles.hpp"

using namespace hmhd;

namespace {

// Analyze samples of a closed-form function, component by component.
VectorField field_of(OperatorWorkspace& ws, double (*fx)(double, double),
                     double (*fy)(double, double), double (*fz)(double, double)) {
  const Grid& g = ws.grid();
  const double h = g.spacing();
  std::array<std::vector<double>, 3> samples;
  for (auto& s : samples) s.resize(g.size());
  std::size_t idx = 0;
  for (int ix = 0; ix < g.extent(0); ++ix) {
    for (int iy = 0; iy < g.extent(1); ++iy) {
      for (int iz = 0; iz < g.extent(2); ++iz, ++idx) {
        const double x = h * ix, y = h * iy;
        samples[0][idx] = fx(x, y);
        samples[1][idx] = fy(x, y);
        samples[2][idx] = fz(x, y);
      }
    }
  }
  return to_spectral(ws.fft(), samples);
}

}  // namespace

TEST_CASE("pure multipliers: curl, divergence, gradient") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  OperatorWorkspace ws(g);

  // curl(0, 0, sin x) = (0, -cos x, 0)
  VectorField f(g);
  f.at(2, 1, 0, 0) = Complex(0.0, -0.5);
  f.at(2, -1, 0, 0) = Complex(0.0, 0.5);
  const VectorField c = curl(f);
  const VectorField expected = field_of(
      ws, [](double, double) { return 0.0; }, [](double x, double) { return -std::cos(x); },
      [](double, double) { return 0.0; });
  CHECK(testhelp::max_coeff_distance(c, expected) < 1e-14);
  CHECK(divergence_residual(c) < 1e-14);

  // div grad s = -|k|^2 s mode by mode.
  ScalarField s(g);
  s.at(2, 3, 0) = Complex(0.5, 1.0);
  s.at(-2, -3, 0) = Complex(0.5, -1.0);
  const ScalarField lap = divergence(gradient(s));
  CHECK(std::abs(lap.at(2, 3, 0) - Complex(-6.5, -13.0)) < 1e-13);

  // partial_derivative against the multiplier directly.
  const VectorField dx = partial_derivative(f, 0);
  CHECK(std::abs(dx.at(2, 1, 0, 0) - Complex(0.0, 1.0) * f.at(2, 1, 0, 0)) < 1e-15);
}

TEST_CASE("pointwise product of two one-mode factors is their exact convolution") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  OperatorWorkspace ws(g);
  FftEngine& fft = ws.fft();
  const double h = g.spacing();

  std::vector<double> sx(g.size()), sy(g.size());
  std::size_t idx = 0;
  for (int ix = 0; ix < 16; ++ix) {
    for (int iy = 0; iy < 16; ++iy, ++idx) {
      sx[idx] = std::sin(h * ix);
      sy[idx] = std::sin(h * iy);
    }
  }
  const ScalarField a = to_spectral(fft, sx);
  const ScalarField b = to_spectral(fft, sy);
  const ScalarField ab = multiply(ws, a, b);
  // sin x sin y = (cos(x-y) - cos(x+y)) / 2: four corner modes at 1/4 or -1/4.
  CHECK(std::abs(ab.at(1, -1, 0) - Complex(0.25, 0.0)) < 1e-14);
  CHECK(std::abs(ab.at(-1, 1, 0) - Complex(0.25, 0.0)) < 1e-14);
  CHECK(std::abs(ab.at(1, 1, 0) - Complex(-0.25, 0.0)) < 1e-14);
  CHECK(std::abs(ab.at(-1, -1, 0) - Complex(-0.25, 0.0)) < 1e-14);
  CHECK(std::abs(ab.at(0, 0, 0)) < 1e-15);
}

TEST_CASE("dealiased products match the direct convolution sum") {
  // Band-limited random inputs; the oracle performs the O(M^2) double sum
  // with no FFT anywhere.
  for (const DimMode mode : {DimMode::TwoPointFiveD, DimMode::ThreeD}) {
    const int n = mode == DimMode::TwoPointFiveD ? 16 : 8;
    const Grid g(mode, n);
    OperatorWorkspace ws(g);
    const int band = n / 3;
    const VectorField a = random_solenoidal(g, 1.0, 1.0, band, 101);
    const VectorField f = random_solenoidal(g, 2.0, 0.5, band, 202);

    const VectorField fast = advect(ws, a, f);
    const VectorField slow = testhelp::convolution_advect(a, f);
    CHECK(testhelp::max_coeff_distance(fast, slow) < 1e-12);

    ScalarField sa(g), sf(g);
    sa.hat() = a.component(0);
    sf.hat() = f.component(1);
    const ScalarField prod = multiply(ws, sa, sf);
    const ScalarField ref = testhelp::convolution_multiply(sa, sf);
    CHECK(testhelp::max_coeff_distance(prod, ref) < 1e-12);
  }
}

TEST_CASE("advect reproduces the hand-computed vortex transport") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  const VectorField u = orszag_tang_velocity(g, 1.0);
  // u = (-sin y, sin x, 0), so (u . grad) u = (-sin x cos y, -cos x sin y, 0).
  const VectorField lhs = advect(ws, u, u);
  const VectorField expected = field_of(
      ws, [](double x, double y) { return -std::sin(x) * std::cos(y); },
      [](double x, double y) { return -std::cos(x) * std::sin(y); },
      [](double, double) { return 0.0; });
  CHECK(testhelp::max_coeff_distance(lhs, expected) < 1e-13);

  // stretch is the same kernel with roles swapped.
  const VectorField b = orszag_tang_magnetic(g, 1.0);
  const VectorField s1 = stretch(ws, b, u);
  const VectorField s2 = advect(ws, b, u);
  CHECK(testhelp::max_coeff_distance(s1, s2) == 0.0);
}

TEST_CASE("jets agree with the one-shot advection") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  OperatorWorkspace ws(g);
  const VectorField a = random_solenoidal(g, 1.0, 1.5, 5, 11);
  const VectorField f = random_solenoidal(g, 1.0, 1.5, 5, 12);
  const PhysicalJet ja = physical_jet(ws, a);
  const PhysicalJet jf = physical_jet(ws, f);
  CHECK(ja.deriv[2][0].empty());  // no z derivatives on the planar lattice
  const VectorField via_jets = advect_from_jets(ws, ja, jf);
  const VectorField direct = advect(ws, a, f);
  CHECK(testhelp::max_coeff_distance(via_jets, direct) < 1e-13);
}

TEST_CASE("hall term of the symmetric two-mode field vanishes identically") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  // B = (sin y, sin x, 0): curl B = (0, 0, cos x - cos y) and the nonlinear
  // term cancels exactly.
  const VectorField B = field_of(
      ws, [](double, double y) { return std::sin(y); },
      [](double x, double) { return std::sin(x); }, [](double, double) { return 0.0; });
  const VectorField h = hall_term(ws, B);
  CHECK(max_coefficient(h) < 1e-14);
}

TEST_CASE("hall term matches a hand-computed nonzero oracle") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  // B = (sin y, sin 2x, 0): curl B = (0, 0, 2 cos 2x - cos y),
  // (curl B) x B = (-(2 cos 2x - cos y) sin 2x, (2 cos 2x - cos y) sin y, 0),
  // curl of that = (0, 0, -3 sin 2x sin y).
  const VectorField B = field_of(
      ws, [](double, double y) { return std::sin(y); },
      [](double x, double) { return std::sin(2.0 * x); }, [](double, double) { return 0.0; });
  const VectorField h = hall_term(ws, B);
  const VectorField expected = field_of(
      ws, [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
      [](double x, double y) { return -3.0 * std::sin(2.0 * x) * std::sin(y); });
  CHECK(testhelp::max_coeff_distance(h, expected) < 1e-13);
  CHECK(divergence_residual(h) < 1e-13);
}

TEST_CASE("hall identity residuals stay at roundoff on random solenoidal fields") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VectorField B = random_solenoidal(g, 1.0 + 0.1 * double(seed), 2.0, 10, seed);
    const auto r = hall_identity_residuals(ws, B);
    CAPTURE(seed);
    CHECK(r.orthogonality < 1e-10);
    CHECK(r.derivative_shift < 1e-10);
    CHECK(r.vector_identity < 1e-10);
    CHECK(r.scale >= 1.0);
  }
}

TEST_CASE("transport by a solenoidal field is energy neutral") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  const VectorField u = random_solenoidal(g, 1.0, 1.0, 10, 41);
  const VectorField f = random_solenoidal(g, 3.0, 2.0, 10, 42);
  const VectorField uf = advect(ws, u, f);
  const double rel = std::abs(l2_inner(uf, f)) / (l2_norm(uf) * l2_norm(f));
  CHECK(rel < 1e-12);
}

TEST_CASE("stretching cross terms cancel in the energy pairing") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  const VectorField u = random_solenoidal(g, 1.0, 1.0, 10, 51);
  const VectorField B = random_solenoidal(g, 2.0, 1.5, 10, 52);
  const VectorField bb = advect(ws, B, B);  // (B . grad) B
  const VectorField bu = advect(ws, B, u);  // (B . grad) u
  const double lhs = l2_inner(bb, u) + l2_inner(bu, B);
  const double scale = l2_norm(bb) * l2_norm(u) + l2_norm(bu) * l2_norm(B);
  CHECK(std::abs(lhs) < 1e-12 * scale);
}

TEST_CASE("pressure recovered from the divergence constraint") {
  const Grid g(DimMode::TwoPointFiveD, 32);
  OperatorWorkspace ws(g);
  // u = (cos x sin y, -sin x cos y, 0) gives (u . grad) u =
  // (-sin 2x / 2, -sin 2y / 2, 0) and p = -(cos 2x + cos 2y) / 4.
  const VectorField u = field_of(
      ws, [](double x, double y) { return std::cos(x) * std::sin(y); },
      [](double x, double y) { return -std::sin(x) * std::cos(y); },
      [](double, double) { return 0.0; });
  const VectorField B(g);
  const ScalarField p = compute_pressure(ws, u, B);
  CHECK(std::abs(p.at(0, 0, 0)) < 1e-15);  // zero mean
  CHECK(std::abs(p.at(2, 0, 0) - Complex(-0.125, 0.0)) < 1e-14);
  CHECK(std::abs(p.at(-2, 0, 0) - Complex(-0.125, 0.0)) < 1e-14);
  CHECK(std::abs(p.at(0, 2, 0) - Complex(-0.125, 0.0)) < 1e-14);
  CHECK(std::abs(p.at(0, -2, 0) - Complex(-0.125, 0.0)) < 1e-14);
  double rest = 0.0;
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int) {
    if ((std::abs(kx) == 2 && ky == 0) || (kx == 0 && std::abs(ky) == 2)) return;
    rest = std::max(rest, std::abs(p.hat()[idx]));
  });
  CHECK(rest < 1e-14);

  // The projected momentum residual: grad p must cancel the compressible
  // part, so u . grad u + grad p is divergence-free.
  VectorField total = advect(ws, u, u);
  add_scaled(total, gradient(p), 1.0);
  CHECK(divergence_residual(total) < 1e-12);
}

TEST_CASE("cross and dot products against componentwise assembly") {
  const Grid g(DimMode::TwoPointFiveD, 16);
  OperatorWorkspace ws(g);
  const VectorField a = random_solenoidal(g, 1.0, 1.0, 5, 61);
  const VectorField b = random_solenoidal(g, 1.0, 1.0, 5, 62);
  const VectorField axb = cross_product(ws, a, b);
  const ScalarField adb = dot_product(ws, a, b);

  // Assemble the same quantities from scalar multiplies.
  auto comp = [&](const VectorField& v, int c) {
    ScalarField s(g);
    s.hat() = v.component(c);
    return s;
  };
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    ScalarField expect = multiply(ws, comp(a, i), comp(b, j));
    const ScalarField minus = multiply(ws, comp(a, j), comp(b, i));
    for (std::size_t m = 0; m < expect.hat().size(); ++m) expect.hat()[m] -= minus.hat()[m];
    ScalarField got(g);
    got.hat() = axb.component(c);
    CHECK(testhelp::max_coeff_distance(got, expect) < 1e-13);
  }
  ScalarField dot_expect(g);
  for (int c = 0; c < 3; ++c) {
    const ScalarField term = multiply(ws, comp(a, c), comp(b, c));
    for (std::size_t m = 0; m < dot_expect.hat().size(); ++m) dot_expect.hat()[m] += term.hat()[m];
  }
  CHECK(testhelp::max_coeff_distance(adb, dot_expect) < 1e-13);

  // a x b is antisymmetric, a . b symmetric.
  const VectorField bxa = cross_product(ws, b, a);
  VectorField sum = axb;
  add_scaled(sum, bxa, 1.0);
  CHECK(max_coefficient(sum) < 1e-14);
}
