#include "hmhd/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmhd {

OperatorWorkspace::OperatorWorkspace(Grid grid)
    : grid_(grid), fft_(grid), dealias_(FrequencyFilter::dealias_two_thirds()) {}

namespace {

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

constexpr Complex kI(0.0, 1.0);

}  // namespace

VectorField curl(const VectorField& f) {
  VectorField out(f.grid());
  const auto& fx = f.component(0);
  const auto& fy = f.component(1);
  const auto& fz = f.component(2);
  auto& ox = out.component(0);
  auto& oy = out.component(1);
  auto& oz = out.component(2);
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    ox[idx] = kI * (static_cast<double>(ky) * fz[idx] - static_cast<double>(kz) * fy[idx]);
    oy[idx] = kI * (static_cast<double>(kz) * fx[idx] - static_cast<double>(kx) * fz[idx]);
    oz[idx] = kI * (static_cast<double>(kx) * fy[idx] - static_cast<double>(ky) * fx[idx]);
  });
  out.set_divergence_free(true);
  return out;
}

ScalarField divergence(const VectorField& f) {
  ScalarField out(f.grid());
  const auto& fx = f.component(0);
  const auto& fy = f.component(1);
  const auto& fz = f.component(2);
  auto& o = out.hat();
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    o[idx] = kI * (static_cast<double>(kx) * fx[idx] + static_cast<double>(ky) * fy[idx] +
                   static_cast<double>(kz) * fz[idx]);
  });
  return out;
}

VectorField gradient(const ScalarField& f) {
  VectorField out(f.grid());
  const auto& a = f.hat();
  for_each_mode(f.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    out.component(0)[idx] = kI * static_cast<double>(kx) * a[idx];
    out.component(1)[idx] = kI * static_cast<double>(ky) * a[idx];
    out.component(2)[idx] = kI * static_cast<double>(kz) * a[idx];
  });
  return out;
}

namespace {

void derivative_inplace(const Grid& g, std::vector<Complex>& a, int axis) {
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const int k = axis == 0 ? kx : axis == 1 ? ky : kz;
    a[idx] *= kI * static_cast<double>(k);
  });
}

}  // namespace

VectorField partial_derivative(const VectorField& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("partial_derivative: bad axis");
  VectorField out = f;
  for (int c = 0; c < 3; ++c) derivative_inplace(f.grid(), out.component(c), axis);
  return out;
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("partial_derivative: bad axis");
  ScalarField out = f;
  derivative_inplace(f.grid(), out.hat(), axis);
  return out;
}

ScalarField multiply(OperatorWorkspace& ws, const ScalarField& f, const ScalarField& g) {
  check_same_grid(f.grid(), g.grid(), "multiply");
  check_same_grid(f.grid(), ws.grid(), "multiply");
  std::vector<double> pf, pg;
  ws.fft().synthesize(f.hat(), pf);
  ws.fft().synthesize(g.hat(), pg);
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
  ScalarField out(ws.grid());
  ws.fft().analyze(pf, out.hat());
  filter_in_place(out, ws.dealias());
  return out;
}

ScalarField dot_product(OperatorWorkspace& ws, const VectorField& f, const VectorField& g) {
  check_same_grid(f.grid(), g.grid(), "dot_product");
  check_same_grid(f.grid(), ws.grid(), "dot_product");
  std::vector<double> acc(ws.grid().size(), 0.0);
  std::vector<double> pf, pg;
  for (int c = 0; c < 3; ++c) {
    ws.fft().synthesize(f.component(c), pf);
    ws.fft().synthesize(g.component(c), pg);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pf[i] * pg[i];
  }
  ScalarField out(ws.grid());
  ws.fft().analyze(acc, out.hat());
  filter_in_place(out, ws.dealias());
  return out;
}

VectorField cross_product(OperatorWorkspace& ws, const VectorField& f, const VectorField& g) {
  check_same_grid(f.grid(), g.grid(), "cross_product");
  check_same_grid(f.grid(), ws.grid(), "cross_product");
  const auto pf = to_physical(ws.fft(), f);
  const auto pg = to_physical(ws.fft(), g);
  const std::size_t m = ws.grid().size();
  std::array<std::vector<double>, 3> pc;
  for (auto& v : pc) v.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    pc[0][i] = pf[1][i] * pg[2][i] - pf[2][i] * pg[1][i];
    pc[1][i] = pf[2][i] * pg[0][i] - pf[0][i] * pg[2][i];
    pc[2][i] = pf[0][i] * pg[1][i] - pf[1][i] * pg[0][i];
  }
  VectorField out = to_spectral(ws.fft(), pc);
  filter_in_place(out, ws.dealias());
  return out;
}

PhysicalJet physical_jet(OperatorWorkspace& ws, const VectorField& f) {
  check_same_grid(f.grid(), ws.grid(), "physical_jet");
  PhysicalJet jet;
  std::vector<Complex> scratch(ws.grid().size());
  for (int c = 0; c < 3; ++c) {
    ws.fft().synthesize(f.component(c), jet.value[static_cast<std::size_t>(c)]);
  }
  for (int axis = 0; axis < ws.grid().dim(); ++axis) {
    for (int c = 0; c < 3; ++c) {
      scratch = f.component(c);
      derivative_inplace(ws.grid(), scratch, axis);
      ws.fft().synthesize(scratch,
                          jet.deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(c)]);
    }
  }
  return jet;
}

VectorField advect_from_jets(OperatorWorkspace& ws, const PhysicalJet& a,
                             const PhysicalJet& f) {
  const std::size_t m = ws.grid().size();
  std::array<std::vector<double>, 3> acc;
  for (auto& v : acc) v.assign(m, 0.0);
  for (int axis = 0; axis < ws.grid().dim(); ++axis) {
    const auto& aj = a.value[static_cast<std::size_t>(axis)];
    for (int c = 0; c < 3; ++c) {
      const auto& df = f.deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(c)];
      auto& o = acc[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < m; ++i) o[i] += aj[i] * df[i];
    }
  }
  VectorField out = to_spectral(ws.fft(), acc);
  filter_in_place(out, ws.dealias());
  return out;
}

VectorField advect(OperatorWorkspace& ws, const VectorField& a, const VectorField& f) {
  check_same_grid(a.grid(), f.grid(), "advect");
  check_same_grid(a.grid(), ws.grid(), "advect");
  // Transforms the advecting field's values and the advected field's
  // derivatives only; cheaper than two full jets.
  PhysicalJet ja;
  for (int c = 0; c < 3; ++c) {
    ws.fft().synthesize(a.component(c), ja.value[static_cast<std::size_t>(c)]);
  }
  PhysicalJet jf;
  std::vector<Complex> scratch(ws.grid().size());
  for (int axis = 0; axis < ws.grid().dim(); ++axis) {
    for (int c = 0; c < 3; ++c) {
      scratch = f.component(c);
      derivative_inplace(ws.grid(), scratch, axis);
      ws.fft().synthesize(scratch,
                          jf.deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(c)]);
    }
  }
  return advect_from_jets(ws, ja, jf);
}

VectorField stretch(OperatorWorkspace& ws, const VectorField& b, const VectorField& u) {
  return advect(ws, b, u);
}

VectorField hall_term(OperatorWorkspace& ws, const VectorField& B) {
  check_same_grid(B.grid(), ws.grid(), "hall_term");
  const VectorField J = curl(B);
  return curl(cross_product(ws, J, B));
}

HallIdentityResiduals hall_identity_residuals(OperatorWorkspace& ws, const VectorField& B) {
  check_same_grid(B.grid(), ws.grid(), "hall_identity_residuals");
  HallIdentityResiduals res;

  double h2 = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& a = B.component(c);
    for_each_mode(B.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                        static_cast<double>(kz) * kz;
      h2 += (1.0 + k2) * (1.0 + k2) * std::norm(a[idx]);
    });
  }
  res.scale = std::max(std::sqrt(B.grid().volume() * h2), 1.0);

  const VectorField J = curl(B);
  const VectorField H = hall_term(ws, B);

  // <H, B> vanishes identically; compare against ||H|| ||B||.
  {
    const double raw = l2_inner(H, B);
    const double mag = std::max(l2_norm(H) * l2_norm(B), 1e-300);
    res.orthogonality = std::abs(raw) / mag;
  }

  // sum_i <d_i H, d_i B> = sum_i <J x d_i B, d_i J>.
  {
    double lhs = 0.0;
    double rhs = 0.0;
    double mag = 0.0;
    for (int axis = 0; axis < B.grid().dim(); ++axis) {
      const VectorField dB = partial_derivative(B, axis);
      const VectorField dH = partial_derivative(H, axis);
      const VectorField dJ = partial_derivative(J, axis);
      const VectorField JxdB = cross_product(ws, J, dB);
      lhs += l2_inner(dH, dB);
      rhs += l2_inner(JxdB, dJ);
      mag += l2_norm(dH) * l2_norm(dB) + l2_norm(JxdB) * l2_norm(dJ);
    }
    res.derivative_shift = std::abs(lhs - rhs) / std::max(mag, 1e-300);
  }

  // B x J - (1/2) grad|B|^2 + (B . grad) B = 0 pointwise.
  {
    const VectorField BxJ = cross_product(ws, B, J);
    const ScalarField b2 = dot_product(ws, B, B);
    const VectorField grad_b2 = gradient(b2);
    const VectorField BgradB = advect(ws, B, B);
    VectorField defect = BxJ;
    add_scaled(defect, grad_b2, -0.5);
    add_scaled(defect, BgradB, 1.0);
    const double mag =
        std::max({l2_norm(BxJ), 0.5 * l2_norm(grad_b2), l2_norm(BgradB), 1e-300});
    res.vector_identity = l2_norm(defect) / mag;
  }
  return res;
}

ScalarField compute_pressure(OperatorWorkspace& ws, const VectorField& u,
                             const VectorField& B) {
  check_same_grid(u.grid(), B.grid(), "compute_pressure");
  check_same_grid(u.grid(), ws.grid(), "compute_pressure");
  VectorField g = advect(ws, u, u);
  add_scaled(g, advect(ws, B, B), -1.0);
  const ScalarField div_g = divergence(g);
  ScalarField p(ws.grid());
  const auto& s = div_g.hat();
  auto& ph = p.hat();
  for_each_mode(ws.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                      static_cast<double>(kz) * kz;
    ph[idx] = k2 == 0.0 ? Complex(0.0, 0.0) : s[idx] / k2;
  });
  return p;
}

}  // namespace hmhd
