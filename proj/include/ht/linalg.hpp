#pragma once

#include <complex>
#include <vector>

#include "ht/matrix.hpp"

namespace ht {

template <class S>
struct QrResult {
  Dense<S> q;
  Dense<S> r;
};

// Householder QR of a square invertible matrix, M = QR with R upper
// triangular and diag(R) real and strictly positive.
// Throws RankDeficient if any |R_ii| < 1e-14 * ||M||_F.
template <class S>
QrResult<S> qr_factor(const Dense<S>& m);

// sqrt(sum_{i != j} |M_ij|^2)
template <class S>
double off_diagonal_norm(const Dense<S>& m);

// Solve A x = b through qr_factor (A square, full rank).
Vector solve(const Matrix& a, const Vector& b);

// Closed-form eigenvalues for symmetric matrices of dimension <= 4,
// sorted ascending. Test oracle; throws DimensionTooLarge for n > 4.
std::vector<double> reference_eigenvalues(const Matrix& m);

}  // namespace ht
