#pragma once

#include <vector>

#include "ht/matrix.hpp"
#include "ht/rng.hpp"

namespace ht {

// Column count for the critically-scaled Wishart-type ensembles,
// m = n + 2*floor(sqrt(n)).
int wishart_columns(int n);

// (X + X^T)/sqrt(4n), X iid standard Gaussian. Exactly symmetric.
Matrix sample_goe(int n, RngStream& rng);

// Symmetric matrix of +-1/sqrt(n) fair coins.
Matrix sample_be(int n, RngStream& rng);

// (X + X^*)/sqrt(8n), X iid standard complex Gaussian. Exactly Hermitian.
ComplexMatrix sample_gue(int n, RngStream& rng);

// W = X X^T / m with X n-by-m; Gaussian or +-1 entries.
Matrix sample_wishart_gaussian(int n, int m, RngStream& rng);
Matrix sample_wishart_bernoulli(int n, int m, RngStream& rng);
Matrix sample_cloe(int n, RngStream& rng);  // m = wishart_columns(n)
Matrix sample_cpbe(int n, RngStream& rng);

// I + X/sqrt(n), X not symmetrized; Bernoulli (cSBE) or Gaussian (cSGE).
Matrix sample_csbe(int n, RngStream& rng);
Matrix sample_csge(int n, RngStream& rng);

enum class InvariantFamily { Quartic, Cosh, GaussCheck };

struct McmcParams {
  int burn_in_sweeps = 10000;
  int thinning_sweeps = 10;
  double step_size = 0.0;  // 0 -> 0.5/sqrt(n)
};

// Eigenvalues drawn by per-coordinate Metropolis from
// prod_{i<j} (l_i - l_j)^2 * exp(-sum_i w(l_i)) with
//   w(l) = n l^4        (Quartic, e^{-n tr M^4}),
//   w(l) = cosh(l)      (Cosh,    e^{-tr cosh M}),
//   w(l) = 2 n l^2      (GaussCheck, matches the GUE sampler normalization).
// Sorted ascending. Throws McmcNotConverged if the burn-in acceptance rate
// leaves (0.05, 0.95).
std::vector<double> sample_invariant_spectrum(InvariantFamily family, int n,
                                              const McmcParams& params, RngStream& rng);

// Haar-distributed unitary via QR of a complex Ginibre draw; the R_ii > 0
// convention of qr_factor is exactly the phase correction Haar requires.
ComplexMatrix sample_haar_unitary(int n, RngStream& rng);

// U diag(lambda) U^* with MCMC eigenvalues and Haar U; exactly Hermitian.
ComplexMatrix sample_invariant(InvariantFamily family, int n, const McmcParams& params,
                               RngStream& rng);

// iid uniform(-1, 1) entries.
Vector sample_rhs_uniform(int n, RngStream& rng);

}  // namespace ht
