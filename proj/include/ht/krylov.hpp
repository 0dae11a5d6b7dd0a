#pragma once

#include "ht/halting.hpp"
#include "ht/matrix.hpp"

namespace ht {

struct SolveTrace {
  Vector residual_norms;  // ||r_0||, ||r_1||, ...
  long halting_time = 0;
  Vector solution;
  double true_residual = 0.0;  // ||W x - b||_2 recomputed at exit
};

struct KrylovResult {
  SolveTrace trace;
  HaltingRecord record;
};

// Conjugate gradient with x_0 = 0 and recursive residuals, halting at the
// first k with ||r_k||_2 < eps (absolute). Throws BreakdownNonSPD when a
// direction has nonpositive curvature.
KrylovResult cg_run(const Matrix& w, const Vector& b, double eps, long max_iter);

// Full GMRES (Arnoldi + modified Gram-Schmidt, plane-rotation least
// squares), x_0 = 0, absolute threshold, capped at n iterations. Arnoldi
// breakdown counts as exact convergence at that step.
KrylovResult gmres_run(const Matrix& w, const Vector& b, double eps, long max_iter = -1);

}  // namespace ht
