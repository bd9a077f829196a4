#pragma once

#include <array>
#include <vector>

#include "hmhd/operators.hpp"

namespace hmhd {

// Sharp dyadic decomposition. blocks[0] is the synthetic shell -1 (the mean
// mode); blocks[l+1] keeps 2^l <= |k| < 2^{l+1}. The shells partition the
// lattice, so the blocks sum back to the field exactly.
template <class FieldT>
struct LpDecomposition {
  std::vector<FieldT> blocks;

  int l_max() const { return static_cast<int>(blocks.size()) - 2; }
  const FieldT& block(int l) const { return blocks.at(static_cast<std::size_t>(l + 1)); }
};

LpDecomposition<ScalarField> decompose(const ScalarField& f);
LpDecomposition<VectorField> decompose(const VectorField& f);

ScalarField reconstruct(const LpDecomposition<ScalarField>& d);
VectorField reconstruct(const LpDecomposition<VectorField>& d);

// Sharp low-pass S_j: keeps |k| < 2^j (all shells through j-1). The zero
// field for j <= -1.
ScalarField sharp_low_pass(const ScalarField& f, int j);
VectorField sharp_low_pass(const VectorField& f, int j);

// Inhomogeneous Besov norm with summability 2:
// ||f||^2 = sum_l (2^{sl})^2 ||block_l||^2, the shell -1 carrying weight
// 2^{-s}. Equivalently a per-mode weight 4^{s*shell(k)}.
double besov_norm(const ScalarField& f, double s);
double besov_norm(const VectorField& f, double s);
// Sobolev norm via the multiplier (1+|k|^2)^{s/2}.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& f, double s);

// Range of sobolev_norm/besov_norm realizable on a grid at smoothness s,
// found by scanning the per-mode weight ratio over the lattice.
struct NormEnvelope {
  double lo = 0.0;
  double hi = 0.0;
};
NormEnvelope sobolev_besov_envelope(const Grid& grid, double s);

// Two-sided Bernstein bound on a single shell: for f supported in shell
// l >= 0, ||(-Laplace)^alpha f|| / ||f|| lies in [4^{alpha*l}, 4^{alpha*(l+1)}).
// normalized divides out the lower bound, so normalized in [1, 4^alpha).
struct BernsteinRatio {
  double normalized = 0.0;
  double upper = 0.0;  // 4^alpha
};
BernsteinRatio bernstein_check(const VectorField& f, int l, double alpha);

// Bony splitting of a pointwise product into low-high, high-low and
// resonant pieces. All products are dealiased pseudo-spectral products;
// the three pieces sum to the dealiased product exactly because pointwise
// multiplication is bilinear. The vector overload pairs with a dot product.
struct ParaproductSplit {
  ScalarField low_high;  // sum_k S_{k-1} f . block_k g
  ScalarField high_low;  // sum_k block_k f . S_{k-1} g
  ScalarField resonant;  // sum_{|j-k|<=1} block_k f . block_j g
};
ParaproductSplit paraproduct_split(OperatorWorkspace& ws, const ScalarField& f,
                                   const ScalarField& g);
ParaproductSplit paraproduct_split(OperatorWorkspace& ws, const VectorField& f,
                                   const VectorField& g);

// Frequency-localized transport commutator
//   [block_l, u . grad] f = block_l((u . grad) f) - (u . grad) block_l f
// and its three-family splitting. The families mirror the Bony pieces of
// (u, grad f); their k-sums run over every shell, which makes the family
// telescope exact: K1 + K2 + K3 equals the commutator to roundoff.
VectorField commutator_block(OperatorWorkspace& ws, int l, const VectorField& u,
                             const VectorField& f);
std::array<VectorField, 3> commutator_block_split(OperatorWorkspace& ws, int l,
                                                  const VectorField& u,
                                                  const VectorField& f);

// ||f||_{H^s'} / (||f||_{L2}^{1-s'/s} ||f||_{H^s}^{s'/s}); requires
// 0 < s' < s. Always <= 1, with equality iff the spectrum sits on a single
// |k| sphere. Returns 0 for the zero field.
double interpolation_check(const VectorField& f, double s_prime, double s);

// Grid-sampled sup of the Frobenius norm of grad f. Pairs with sobolev_norm
// to probe the embedding H^s into Lipschitz for s > 1 + d/2.
double gradient_sup(OperatorWorkspace& ws, const VectorField& f);

}  // namespace hmhd
