#include "ht/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ht/errors.hpp"

namespace ht {

namespace {

inline double conj_(double x) { return x; }
inline std::complex<double> conj_(const std::complex<double>& x) { return std::conj(x); }
inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& x) { return std::norm(x); }

}  // namespace

template <class S>
QrResult<S> qr_factor(const Dense<S>& m) {
  if (!m.square()) throw Error("qr_factor: matrix must be square");
  const std::size_t n = m.rows();
  const double rank_floor = 1e-14 * m.frobenius_norm();

  Dense<S> r = m;
  Dense<S> q = Dense<S>::identity(n);
  std::vector<S> v(n);

  for (std::size_t k = 0; k < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm2 += abs2(r(i, k));
    double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;  // zero column; caught by the rank floor below

    S x0 = r(k, k);
    double ax0 = std::abs(std::complex<double>(x0));
    S phase = (ax0 == 0.0) ? S{1} : S{x0 / S{ax0}};
    // v = x + phase*||x|| e_k avoids cancellation in the leading entry
    for (std::size_t i = k; i < n; ++i) v[i] = r(i, k);
    v[k] += phase * S{xnorm};
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += abs2(v[i]);
    if (vnorm2 == 0.0) continue;

    // R <- H R on the trailing block, H = I - 2 v v* / |v|^2
    for (std::size_t j = k; j < n; ++j) {
      S s{};
      for (std::size_t i = k; i < n; ++i) s += conj_(v[i]) * r(i, j);
      s = S{2.0 / vnorm2} * s;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    r(k, k) = S{-1.0} * phase * S{xnorm};
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) = S{};

    // Q <- Q H
    for (std::size_t i = 0; i < n; ++i) {
      S s{};
      for (std::size_t l = k; l < n; ++l) s += q(i, l) * v[l];
      s = S{2.0 / vnorm2} * s;
      for (std::size_t l = k; l < n; ++l) q(i, l) -= s * conj_(v[l]);
    }
  }

  // Column phase fix: make diag(R) real and strictly positive.
  for (std::size_t k = 0; k < n; ++k) {
    S d = r(k, k);
    double ad = std::abs(std::complex<double>(d));
    if (ad < rank_floor) throw RankDeficient("qr_factor: matrix numerically rank deficient");
    S ph = d / S{ad};
    for (std::size_t j = k; j < n; ++j) r(k, j) = conj_(ph) * r(k, j);
    r(k, k) = S{ad};
    for (std::size_t i = 0; i < n; ++i) q(i, k) = q(i, k) * ph;
  }
  return {std::move(q), std::move(r)};
}

template QrResult<double> qr_factor(const Dense<double>&);
template QrResult<std::complex<double>> qr_factor(const Dense<std::complex<double>>&);

template <class S>
double off_diagonal_norm(const Dense<S>& m) {
  if (!m.square()) throw Error("off_diagonal_norm: matrix must be square");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += abs2(m(i, j));
  return std::sqrt(s);
}

template double off_diagonal_norm(const Dense<double>&);
template double off_diagonal_norm(const Dense<std::complex<double>>&);

Vector solve(const Matrix& a, const Vector& b) {
  auto [q, r] = qr_factor(a);
  const std::size_t n = a.rows();
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += q(j, i) * b[j];
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
    x[ii] = s / r(ii, ii);
  }
  return x;
}

namespace {

// Real roots of t^3 + a t^2 + b t + c.
std::vector<double> cubic_roots(double a, double b, double c) {
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double shift = -a / 3.0;
  std::vector<double> roots;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc >= 0.0 && p < 0.0) {
    double rho = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * rho);
    arg = std::clamp(arg, -1.0, 1.0);
    double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(shift + rho * std::cos(phi - 2.0943951023931953 * k));
  } else if (std::abs(p) < 1e-12 * (1.0 + std::abs(q))) {
    roots.push_back(shift + std::cbrt(-q));
  } else {
    // one real root via Cardano
    double d = q * q / 4.0 + p * p * p / 27.0;
    if (d < 0.0) d = 0.0;
    double sd = std::sqrt(d);
    roots.push_back(shift + std::cbrt(-q / 2.0 + sd) + std::cbrt(-q / 2.0 - sd));
  }
  return roots;
}

// Newton polish against the monic characteristic polynomial.
double polish(double x, const std::vector<double>& coeff) {
  const int deg = static_cast<int>(coeff.size());
  for (int it = 0; it < 4; ++it) {
    double pv = 1.0, dv = 0.0;
    for (int k = 0; k < deg; ++k) {
      dv = dv * x + pv;
      pv = pv * x + coeff[k];
    }
    if (dv == 0.0) break;
    double step = pv / dv;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

}  // namespace

std::vector<double> reference_eigenvalues(const Matrix& m) {
  if (!m.square()) throw Error("reference_eigenvalues: matrix must be square");
  const std::size_t n = m.rows();
  if (n > 4) throw DimensionTooLarge("reference_eigenvalues: n must be <= 4");
  if (n == 0) return {};

  // Faddeev-LeVerrier: p(x) = x^n + coeff[0] x^{n-1} + ... + coeff[n-1]
  std::vector<double> coeff(n);
  Matrix mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    coeff[k - 1] = -mk.trace_real() / static_cast<double>(k);
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += coeff[k - 1];
    mk = matmul(m, mk);
  }

  std::vector<double> roots;
  if (n == 1) {
    roots = {-coeff[0]};
  } else if (n == 2) {
    double disc = coeff[0] * coeff[0] - 4.0 * coeff[1];
    if (disc < 0.0) disc = 0.0;  // symmetric input: real spectrum
    double sd = std::sqrt(disc);
    roots = {(-coeff[0] - sd) / 2.0, (-coeff[0] + sd) / 2.0};
  } else if (n == 3) {
    roots = cubic_roots(coeff[0], coeff[1], coeff[2]);
    while (roots.size() < 3) roots.push_back(roots.front());
  } else {
    // Ferrari: depress with y = x + a3/4, factor into two quadratics.
    double a3 = coeff[0], a2 = coeff[1], a1 = coeff[2], a0 = coeff[3];
    double p = a2 - 3.0 * a3 * a3 / 8.0;
    double q = a1 - a3 * a2 / 2.0 + a3 * a3 * a3 / 8.0;
    double r = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 * a3 * a3 * a3 / 256.0;
    double shift = -a3 / 4.0;
    double scale = 1.0 + std::abs(p) + std::abs(r);
    std::vector<double> ys;
    if (std::abs(q) < 1e-13 * scale) {
      double disc = p * p - 4.0 * r;
      if (disc < 0.0) disc = 0.0;
      double sd = std::sqrt(disc);
      for (double z2 : {(-p - sd) / 2.0, (-p + sd) / 2.0}) {
        double z = std::sqrt(std::max(z2, 0.0));
        ys.push_back(z);
        ys.push_back(-z);
      }
    } else {
      // resolvent: 8 t^3 + 8 p t^2 + (2 p^2 - 8 r) t - q^2 = 0
      auto ts = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
      double t = *std::max_element(ts.begin(), ts.end());
      if (t <= 0.0) t = 1e-30;
      double aa = std::sqrt(2.0 * t);
      double b1 = p / 2.0 + t - q / (2.0 * aa);
      double c1 = p / 2.0 + t + q / (2.0 * aa);
      double d1 = aa * aa - 4.0 * b1;
      double d2 = aa * aa - 4.0 * c1;
      if (d1 < 0.0) d1 = 0.0;
      if (d2 < 0.0) d2 = 0.0;
      ys = {(-aa - std::sqrt(d1)) / 2.0, (-aa + std::sqrt(d1)) / 2.0,
            (aa - std::sqrt(d2)) / 2.0, (aa + std::sqrt(d2)) / 2.0};
    }
    for (double y : ys) roots.push_back(y + shift);
  }

  for (double& x : roots) x = polish(x, coeff);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ht
