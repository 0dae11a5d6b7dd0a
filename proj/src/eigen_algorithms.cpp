#include "ht/eigen_algorithms.hpp"

#include <cmath>
#include <complex>

#include "ht/errors.hpp"
#include "ht/linalg.hpp"

namespace ht {

namespace {

constexpr double kPi = 3.141592653589793238462643;

inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& x) { return std::norm(x); }

}  // namespace

double givens_angle(const Matrix& m, std::size_t i, std::size_t j) {
  double b = m(i, j);
  double theta = 0.5 * std::atan2(2.0 * b, m(j, j) - m(i, i));
  // reduce to the principal branch (-pi/4, pi/4]
  if (theta > kPi / 4.0) theta -= kPi / 2.0;
  if (theta <= -kPi / 4.0) theta += kPi / 2.0;
  return theta;
}

long default_jacobi_max_iter(int n) { return 20L * n * n; }
long default_qr_max_iter(int n) { return 10000L * n; }

JacobiResult jacobi_run(const Matrix& m, double eps, long max_iter) {
  if (!m.square()) throw Error("jacobi_run: matrix must be square");
  const std::size_t n = m.rows();
  if (max_iter < 0) max_iter = default_jacobi_max_iter(static_cast<int>(n));
  const double eps2 = eps * eps;

  Matrix a = m;
  HaltingRecord rec;
  rec.algorithm = "jacobi";
  rec.n = static_cast<int>(n);
  rec.epsilon = eps;

  auto exact_off2 = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return s;
  };

  double off2 = exact_off2();
  if (off2 < eps2 || n < 2) {
    rec.halting_time = 0.0;
    return {rec, std::move(a)};
  }

  // Per-row maxima over the strict upper triangle; ties keep the smallest
  // column, and the pivot scan keeps the smallest row, so tie-breaking is
  // lexicographic.
  std::vector<double> row_max(n, -1.0);
  std::vector<std::size_t> row_arg(n, 0);
  auto rescan_row = [&](std::size_t i) {
    double best = -1.0;
    std::size_t arg = i + 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = std::abs(a(i, j));
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    row_max[i] = best;
    row_arg[i] = arg;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) rescan_row(i);

  const long resync_every = static_cast<long>(n * (n - 1) / 2);
  long rotations = 0;
  long since_resync = 0;
  bool halted = false;

  while (rotations < max_iter) {
    std::size_t r = 0;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (row_max[i] > row_max[r]) r = i;
    std::size_t c = row_arg[r];
    double p = a(r, c);
    if (p == 0.0) {
      off2 = exact_off2();
      halted = off2 < eps2;
      break;
    }

    double theta = givens_angle(a, r, c);
    double co = std::cos(theta);
    double si = std::sin(theta);

    double arr = a(r, r), acc = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r || k == c) continue;
      double vr = a(r, k), vc = a(c, k);
      double nr = co * vr - si * vc;
      double nc = si * vr + co * vc;
      a(r, k) = nr;
      a(k, r) = nr;
      a(c, k) = nc;
      a(k, c) = nc;
    }
    a(r, r) = co * co * arr - 2.0 * co * si * p + si * si * acc;
    a(c, c) = si * si * arr + 2.0 * co * si * p + co * co * acc;
    a(r, c) = 0.0;
    a(c, r) = 0.0;

    ++rotations;
    ++since_resync;
    off2 -= 2.0 * p * p;

    rescan_row(r);
    rescan_row(c);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (k == r || k == c) continue;
      bool stale = false;
      for (std::size_t jc : {r, c}) {
        if (jc <= k) continue;
        double v = std::abs(a(k, jc));
        if (v > row_max[k]) {
          row_max[k] = v;
          row_arg[k] = jc;
        } else if (row_arg[k] == jc) {
          stale = true;
        }
      }
      if (stale) rescan_row(k);
    }

    // The incremental off2 drifts; resync periodically and confirm halting
    // against an exact recomputation.
    if (off2 < 4.0 * eps2 || since_resync >= resync_every) {
      off2 = exact_off2();
      since_resync = 0;
      if (off2 < eps2) {
        halted = true;
        break;
      }
    }
  }

  rec.halting_time = static_cast<double>(rotations);
  rec.capped = !halted;
  return {rec, std::move(a)};
}

template <class S>
std::optional<std::size_t> qr_deflation_check(const Dense<S>& m, double eps) {
  const std::size_t n = m.rows();
  const double eps2 = eps * eps;
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k && s <= eps2; ++i)
      for (std::size_t j = k; j < n; ++j) {
        s += abs2(m(i, j));
        if (s > eps2) break;
      }
    if (s <= eps2) return k;
  }
  return std::nullopt;
}

template std::optional<std::size_t> qr_deflation_check(const Dense<double>&, double);
template std::optional<std::size_t> qr_deflation_check(const Dense<std::complex<double>>&,
                                                       double);

template <class S>
QrRunResult<S> qr_deflation_run(const Dense<S>& m, double eps, long max_iter) {
  if (!m.square()) throw Error("qr_deflation_run: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (max_iter < 0) max_iter = default_qr_max_iter(n);

  QrRunResult<S> out;
  out.record.algorithm = "qr";
  out.record.n = n;
  out.record.epsilon = eps;

  Dense<S> a = m;
  long t = 0;
  std::optional<std::size_t> split = qr_deflation_check(a, eps);
  while (!split && t < max_iter) {
    auto [q, r] = qr_factor(a);
    a = matmul(r, q);
    ++t;
    split = qr_deflation_check(a, eps);
  }

  out.record.halting_time = static_cast<double>(t);
  out.record.capped = !split.has_value();
  out.split = split.value_or(0);
  out.final_matrix = std::move(a);
  return out;
}

template QrRunResult<double> qr_deflation_run(const Dense<double>&, double, long);
template QrRunResult<std::complex<double>> qr_deflation_run(const Dense<std::complex<double>>&,
                                                            double, long);

}  // namespace ht
