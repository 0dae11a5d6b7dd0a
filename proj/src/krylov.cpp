#include "ht/krylov.hpp"

#include <cmath>

#include "ht/errors.hpp"

namespace ht {

KrylovResult cg_run(const Matrix& w, const Vector& b, double eps, long max_iter) {
  const std::size_t n = b.size();
  if (eps <= 0.0) throw Error("cg_run: eps must be positive");

  KrylovResult out;
  out.record.algorithm = "cg";
  out.record.n = static_cast<int>(n);
  out.record.epsilon = eps;

  Vector x(n, 0.0);
  Vector r = b;  // r_0 = b - W x_0 = b
  double rn = norm2(r);
  out.trace.residual_norms.push_back(rn);

  long k = 0;
  bool halted = rn < eps;
  Vector p = r;
  double rr = dot(r, r);
  while (!halted && k < max_iter) {
    Vector wp = matvec(w, p);
    double curvature = dot(p, wp);
    if (curvature <= 0.0) throw BreakdownNonSPD("cg_run: nonpositive direction curvature");
    double alpha = rr / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * wp[i];
    }
    double rr_next = dot(r, r);
    rn = std::sqrt(rr_next);
    out.trace.residual_norms.push_back(rn);
    ++k;
    if (rn < eps) {
      halted = true;
      break;
    }
    double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }

  Vector wx = matvec(w, x);
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += (wx[i] - b[i]) * (wx[i] - b[i]);
  out.trace.true_residual = std::sqrt(tr);
  out.trace.solution = std::move(x);
  out.trace.halting_time = k;
  out.record.halting_time = static_cast<double>(k);
  out.record.capped = !halted;
  return out;
}

KrylovResult gmres_run(const Matrix& w, const Vector& b, double eps, long max_iter) {
  const std::size_t n = b.size();
  if (eps <= 0.0) throw Error("gmres_run: eps must be positive");
  double bnorm = norm2(b);
  if (bnorm == 0.0) throw Error("gmres_run: zero right-hand side");
  if (max_iter < 0 || max_iter > static_cast<long>(n)) max_iter = static_cast<long>(n);

  KrylovResult out;
  out.record.algorithm = "gmres";
  out.record.n = static_cast<int>(n);
  out.record.epsilon = eps;

  out.trace.residual_norms.push_back(bnorm);
  if (bnorm < eps) {
    out.trace.solution.assign(n, 0.0);
    out.record.halting_time = 0.0;
    out.trace.true_residual = bnorm;
    return out;
  }

  std::vector<Vector> basis;  // Arnoldi vectors v_1, v_2, ...
  basis.reserve(max_iter + 1);
  {
    Vector v0 = b;
    for (double& e : v0) e /= bnorm;
    basis.push_back(std::move(v0));
  }

  // Hessenberg columns after applying accumulated plane rotations.
  std::vector<Vector> hcols;
  Vector cs, sn;       // rotation coefficients
  Vector g = {bnorm};  // rotated rhs; |g.back()| is the current residual

  long k = 0;
  bool halted = false;
  bool breakdown = false;
  while (k < max_iter) {
    Vector v = matvec(w, basis[k]);
    Vector h(k + 2, 0.0);
    for (long j = 0; j <= k; ++j) {
      double hj = dot(v, basis[j]);
      h[j] = hj;
      for (std::size_t i = 0; i < n; ++i) v[i] -= hj * basis[j][i];
    }
    double hnext = norm2(v);
    h[k + 1] = hnext;

    // apply previous rotations to the new column
    for (long j = 0; j < k; ++j) {
      double t = cs[j] * h[j] + sn[j] * h[j + 1];
      h[j + 1] = -sn[j] * h[j] + cs[j] * h[j + 1];
      h[j] = t;
    }
    // new rotation annihilating h[k+1]
    double denom = std::hypot(h[k], h[k + 1]);
    double c = denom == 0.0 ? 1.0 : h[k] / denom;
    double s = denom == 0.0 ? 0.0 : h[k + 1] / denom;
    h[k] = denom;
    h[k + 1] = 0.0;
    cs.push_back(c);
    sn.push_back(s);
    g.push_back(-s * g[k]);
    g[k] = c * g[k];

    hcols.push_back(std::move(h));
    ++k;
    double res = std::abs(g[k]);

    if (hnext == 0.0) {
      // exact invariant subspace: the least-squares residual is final
      breakdown = true;
      halted = true;
      out.trace.residual_norms.push_back(res);
      break;
    }
    for (double& e : v) e /= hnext;
    basis.push_back(std::move(v));

    out.trace.residual_norms.push_back(res);
    if (res < eps) {
      halted = true;
      break;
    }
  }

  // back-substitute for y, x = V y
  Vector y(k, 0.0);
  for (long ii = k; ii-- > 0;) {
    double s = g[ii];
    for (long j = ii + 1; j < k; ++j) s -= hcols[j][ii] * y[j];
    y[ii] = s / hcols[ii][ii];
  }
  Vector x(n, 0.0);
  for (long j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * basis[j][i];

  Vector wx = matvec(w, x);
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += (wx[i] - b[i]) * (wx[i] - b[i]);
  out.trace.true_residual = std::sqrt(tr);
  out.trace.solution = std::move(x);
  out.trace.halting_time = k;
  out.record.halting_time = static_cast<double>(k);
  out.record.capped = !halted;
  (void)breakdown;
  return out;
}

}  // namespace ht
