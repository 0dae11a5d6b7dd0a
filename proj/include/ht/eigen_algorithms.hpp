#pragma once

#include <cstddef>
#include <optional>

#include "ht/halting.hpp"
#include "ht/matrix.hpp"

namespace ht {

// Rotation angle in (-pi/4, pi/4] zeroing entry (i, j) of a symmetric
// matrix under G^T M G; equal-diagonal case gives pi/4 * sign(M_ij).
double givens_angle(const Matrix& m, std::size_t i, std::size_t j);

long default_jacobi_max_iter(int n);  // 20 n^2 rotations
long default_qr_max_iter(int n);      // 1e4 n iterations

struct JacobiResult {
  HaltingRecord record;
  Matrix final_matrix;
};

// Classical Jacobi with maximal-pivot selection (lexicographic tie-break),
// halting when off_diagonal_norm < eps. halting_time counts rotations.
JacobiResult jacobi_run(const Matrix& m, double eps, long max_iter = -1);

// Smallest k in {1..n-1} with ||M[0..k), [k..n)||_F <= eps, or nullopt.
template <class S>
std::optional<std::size_t> qr_deflation_check(const Dense<S>& m, double eps);

// Unshifted QR iteration M <- RQ halting at the first deflation.
template <class S>
struct QrRunResult {
  HaltingRecord record;
  Dense<S> final_matrix;
  std::size_t split = 0;  // deflation index when uncapped
};

template <class S>
QrRunResult<S> qr_deflation_run(const Dense<S>& m, double eps, long max_iter = -1);

}  // namespace ht
