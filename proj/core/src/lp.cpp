#include "hmhd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hmhd/spectral_ops.hpp"

namespace hmhd {

namespace {

template <class FieldT>
LpDecomposition<FieldT> decompose_impl(const FieldT& f) {
  LpDecomposition<FieldT> d;
  const int top = max_shell(f.grid());
  d.blocks.reserve(static_cast<std::size_t>(top + 2));
  for (int l = -1; l <= top; ++l) {
    d.blocks.push_back(apply_filter(f, FrequencyFilter::dyadic_shell(l)));
  }
  return d;
}

void add_hat(std::vector<Complex>& dest, const std::vector<Complex>& src) {
  for (std::size_t i = 0; i < dest.size(); ++i) dest[i] += src[i];
}

// Per-mode squared weight of the Besov sum: 4^{s * shell(k)}.
double besov_weight_sq(long long k2, double s) {
  return std::pow(4.0, s * shell_of(k2));
}

}  // namespace

LpDecomposition<ScalarField> decompose(const ScalarField& f) { return decompose_impl(f); }
LpDecomposition<VectorField> decompose(const VectorField& f) { return decompose_impl(f); }

ScalarField reconstruct(const LpDecomposition<ScalarField>& d) {
  if (d.blocks.empty()) throw std::invalid_argument("reconstruct: empty decomposition");
  ScalarField out = d.blocks.front();
  for (std::size_t b = 1; b < d.blocks.size(); ++b) add_hat(out.hat(), d.blocks[b].hat());
  return out;
}

VectorField reconstruct(const LpDecomposition<VectorField>& d) {
  if (d.blocks.empty()) throw std::invalid_argument("reconstruct: empty decomposition");
  VectorField out = d.blocks.front();
  for (std::size_t b = 1; b < d.blocks.size(); ++b) {
    for (int c = 0; c < 3; ++c) add_hat(out.component(c), d.blocks[b].component(c));
  }
  return out;
}

namespace {

template <class FieldT>
FieldT low_pass_impl(const FieldT& f, int j) {
  if (j <= -1) return FieldT(f.grid());
  // All shells through j-1, i.e. |k| < 2^j. |k|^2 is an integer, so a ball
  // of squared radius 4^j - 0.5 keeps exactly the modes with |k|^2 <= 4^j - 1
  // with half a unit of margin on either side of the cut.
  const double radius = std::sqrt(std::ldexp(1.0, 2 * j) - 0.5);
  return apply_filter(f, FrequencyFilter::friedrichs_ball(radius));
}

}  // namespace

ScalarField sharp_low_pass(const ScalarField& f, int j) { return low_pass_impl(f, j); }
VectorField sharp_low_pass(const VectorField& f, int j) { return low_pass_impl(f, j); }

double besov_norm(const ScalarField& f, double s) {
  double sum = 0.0;
  const auto& a = f.hat();
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += besov_weight_sq(g.k2(i), s) * std::norm(a[i]);
  }
  return std::sqrt(g.volume() * sum);
}

double besov_norm(const VectorField& f, double s) {
  double sum = 0.0;
  const Grid& g = f.grid();
  for (int c = 0; c < 3; ++c) {
    const auto& a = f.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum += besov_weight_sq(g.k2(i), s) * std::norm(a[i]);
    }
  }
  return std::sqrt(g.volume() * sum);
}

double sobolev_norm(const ScalarField& f, double s) {
  double sum = 0.0;
  const auto& a = f.hat();
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::pow(1.0 + static_cast<double>(g.k2(i)), s) * std::norm(a[i]);
  }
  return std::sqrt(g.volume() * sum);
}

double sobolev_norm(const VectorField& f, double s) {
  double sum = 0.0;
  const Grid& g = f.grid();
  for (int c = 0; c < 3; ++c) {
    const auto& a = f.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum += std::pow(1.0 + static_cast<double>(g.k2(i)), s) * std::norm(a[i]);
    }
  }
  return std::sqrt(g.volume() * sum);
}

NormEnvelope sobolev_besov_envelope(const Grid& grid, double s) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for_each_mode(grid, [&](std::size_t, int kx, int ky, int kz) {
    const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky +
                         static_cast<long long>(kz) * kz;
    const double w = std::pow(1.0 + static_cast<double>(k2), s) / besov_weight_sq(k2, s);
    if (first) {
      lo = hi = w;
      first = false;
    } else {
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  });
  return {std::sqrt(lo), std::sqrt(hi)};
}

BernsteinRatio bernstein_check(const VectorField& f, int l, double alpha) {
  if (l < 0) throw std::invalid_argument("bernstein_check: needs a shell l >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("bernstein_check: alpha must be > 0");
  if (residual_outside(f, FrequencyFilter::dyadic_shell(l)) != 0.0) {
    throw std::invalid_argument("bernstein_check: field has content outside shell " +
                                std::to_string(l));
  }
  const double base = l2_norm(f);
  if (base == 0.0) throw std::invalid_argument("bernstein_check: zero field");
  // (-Laplace)^alpha has symbol |k|^{2 alpha}, i.e. Lambda^{2 alpha}.
  const double ratio = fractional_seminorm(f, 2.0 * alpha) / base;
  BernsteinRatio r;
  r.normalized = ratio / std::pow(4.0, alpha * l);
  r.upper = std::pow(4.0, alpha);
  return r;
}

namespace {

void accumulate(ScalarField& dest, const ScalarField& src) { add_hat(dest.hat(), src.hat()); }
void accumulate(VectorField& dest, const VectorField& src) { add_scaled(dest, src, 1.0); }

// Shared paraproduct assembly. Product is any dealiased bilinear pairing
// mapping two fields of type FieldT to a ScalarField.
template <class FieldT, class Product>
ParaproductSplit paraproduct_impl(OperatorWorkspace& ws, const FieldT& f, const FieldT& g,
                                  Product product) {
  const auto df = decompose(f);
  const auto dg = decompose(g);
  const int top = df.l_max();

  ParaproductSplit out{ScalarField(ws.grid()), ScalarField(ws.grid()), ScalarField(ws.grid())};
  // Running low-pass sums. At the top of round k they must hold S_{k-1},
  // the blocks through k-2, so the fold lags one round behind: the end of
  // round k adds block k-1 (forming S_k, which round k+1 reads).
  FieldT sf = FieldT(f.grid());
  FieldT sg = FieldT(g.grid());
  for (int k = -1; k <= top; ++k) {
    if (k >= 1) {
      const ScalarField lh = product(ws, sf, dg.block(k));
      const ScalarField hl = product(ws, df.block(k), sg);
      add_hat(out.low_high.hat(), lh.hat());
      add_hat(out.high_low.hat(), hl.hat());
    }
    for (int j = std::max(-1, k - 1); j <= std::min(top, k + 1); ++j) {
      const ScalarField r = product(ws, df.block(k), dg.block(j));
      add_hat(out.resonant.hat(), r.hat());
    }
    if (k >= 0) {
      accumulate(sf, df.block(k - 1));
      accumulate(sg, dg.block(k - 1));
    }
  }
  return out;
}

}  // namespace

ParaproductSplit paraproduct_split(OperatorWorkspace& ws, const ScalarField& f,
                                   const ScalarField& g) {
  return paraproduct_impl(ws, f, g,
                          [](OperatorWorkspace& w, const ScalarField& a, const ScalarField& b) {
                            return multiply(w, a, b);
                          });
}

ParaproductSplit paraproduct_split(OperatorWorkspace& ws, const VectorField& f,
                                   const VectorField& g) {
  return paraproduct_impl(ws, f, g,
                          [](OperatorWorkspace& w, const VectorField& a, const VectorField& b) {
                            return dot_product(w, a, b);
                          });
}

VectorField commutator_block(OperatorWorkspace& ws, int l, const VectorField& u,
                             const VectorField& f) {
  if (l < -1) throw std::invalid_argument("commutator_block: shell must be >= -1");
  const FrequencyFilter shell = FrequencyFilter::dyadic_shell(l);
  VectorField out = apply_filter(advect(ws, u, f), shell);
  add_scaled(out, advect(ws, u, apply_filter(f, shell)), -1.0);
  return out;
}

std::array<VectorField, 3> commutator_block_split(OperatorWorkspace& ws, int l,
                                                  const VectorField& u,
                                                  const VectorField& f) {
  if (l < -1) throw std::invalid_argument("commutator_block_split: shell must be >= -1");
  const FrequencyFilter shell_l = FrequencyFilter::dyadic_shell(l);
  const auto du = decompose(u);
  const auto df = decompose(f);
  const int top = du.l_max();
  // Shells above the lattice ceiling are empty.
  const VectorField block_l_f = l <= top ? df.block(l) : VectorField(f.grid());
  const Grid& g = ws.grid();

  VectorField k1(g), k2(g), k3(g);
  // Running sums hold S_{k-1} at the top of round k; the fold lags one
  // round (end of round k adds block k-1), as in paraproduct_impl.
  VectorField su(g);
  VectorField sf(g);
  for (int k = -1; k <= top; ++k) {
    if (k >= 1) {
      // Transport family: frequency-localized advection by the low-pass
      // velocity, minus the same advection pulled through the cutoff.
      add_scaled(k1, apply_filter(advect(ws, su, df.block(k)), shell_l), 1.0);
      // High-low family, first half.
      add_scaled(k2, apply_filter(advect(ws, du.block(k), sf), shell_l), 1.0);
      if (k >= l + 2) add_scaled(k2, advect(ws, du.block(k), block_l_f), -1.0);
    }
    // Resonant family.
    for (int j = std::max(-1, k - 1); j <= std::min(top, k + 1); ++j) {
      add_scaled(k3, apply_filter(advect(ws, du.block(k), df.block(j)), shell_l), 1.0);
    }
    if (std::abs(k - l) <= 1) add_scaled(k3, advect(ws, du.block(k), block_l_f), -1.0);
    if (k >= 0) {
      accumulate(su, du.block(k - 1));
      accumulate(sf, df.block(k - 1));
    }
  }
  // Transport family, second half: only the diagonal survives the cutoff.
  if (l >= 0 && l <= top) {
    add_scaled(k1, advect(ws, sharp_low_pass(u, l - 1), block_l_f), -1.0);
  }
  return {std::move(k1), std::move(k2), std::move(k3)};
}

double interpolation_check(const VectorField& f, double s_prime, double s) {
  if (!(s_prime > 0.0) || !(s_prime < s)) {
    throw std::invalid_argument("interpolation_check: needs 0 < s' < s");
  }
  const double base = l2_norm(f);
  if (base == 0.0) return 0.0;
  const double theta = s_prime / s;
  const double bound = std::pow(base, 1.0 - theta) * std::pow(sobolev_norm(f, s), theta);
  return sobolev_norm(f, s_prime) / bound;
}

double gradient_sup(OperatorWorkspace& ws, const VectorField& f) {
  const Grid& g = ws.grid();
  std::vector<double> acc(g.size(), 0.0);
  std::vector<Complex> scratch(g.size());
  std::vector<double> samples;
  for (int axis = 0; axis < g.dim(); ++axis) {
    for (int c = 0; c < 3; ++c) {
      scratch = f.component(c);
      for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const int k = axis == 0 ? kx : axis == 1 ? ky : kz;
        scratch[idx] *= Complex(0.0, static_cast<double>(k));
      });
      ws.fft().synthesize(scratch, samples);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += samples[i] * samples[i];
    }
  }
  double worst = 0.0;
  for (const double v : acc) worst = std::max(worst, v);
  return std::sqrt(worst);
}

}  // namespace hmhd
