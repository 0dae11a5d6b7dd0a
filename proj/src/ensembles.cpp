#include "ht/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "ht/errors.hpp"
#include "ht/linalg.hpp"

namespace ht {

int wishart_columns(int n) {
  return n + 2 * static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
}

Matrix sample_goe(int n, RngStream& rng) {
  Matrix x(n, n);
  for (auto& e : x.data()) e = rng.normal();
  Matrix m(n, n);
  double scale = 1.0 / std::sqrt(4.0 * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = (x(i, j) + x(j, i)) * scale;
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

Matrix sample_be(int n, RngStream& rng) {
  Matrix m(n, n);
  double v = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double e = rng.coin_pm1() * v;
      m(i, j) = e;
      m(j, i) = e;
    }
  return m;
}

ComplexMatrix sample_gue(int n, RngStream& rng) {
  // standard complex Gaussian: Re and Im each variance 1/2
  ComplexMatrix x(n, n);
  const double half = std::sqrt(0.5);
  for (auto& e : x.data()) e = {half * rng.normal(), half * rng.normal()};
  ComplexMatrix m(n, n);
  double scale = 1.0 / std::sqrt(8.0 * n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = {2.0 * x(i, i).real() * scale, 0.0};
    for (int j = i + 1; j < n; ++j) {
      std::complex<double> v = (x(i, j) + std::conj(x(j, i))) * scale;
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

namespace {

Matrix gram_over_m(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  const int m = static_cast<int>(x.cols());
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    const double* ri = x.row_ptr(i);
    for (int j = i; j < n; ++j) {
      const double* rj = x.row_ptr(j);
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += ri[k] * rj[k];
      s /= m;
      w(i, j) = s;
      w(j, i) = s;
    }
  }
  return w;
}

}  // namespace

Matrix sample_wishart_gaussian(int n, int m, RngStream& rng) {
  Matrix x(n, m);
  for (auto& e : x.data()) e = rng.normal();
  return gram_over_m(x);
}

Matrix sample_wishart_bernoulli(int n, int m, RngStream& rng) {
  Matrix x(n, m);
  for (auto& e : x.data()) e = static_cast<double>(rng.coin_pm1());
  return gram_over_m(x);
}

Matrix sample_cloe(int n, RngStream& rng) {
  return sample_wishart_gaussian(n, wishart_columns(n), rng);
}

Matrix sample_cpbe(int n, RngStream& rng) {
  return sample_wishart_bernoulli(n, wishart_columns(n), rng);
}

Matrix sample_csbe(int n, RngStream& rng) {
  Matrix m(n, n);
  double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& e : m.data()) e = rng.coin_pm1() * s;
  for (int i = 0; i < n; ++i) m(i, i) += 1.0;
  return m;
}

Matrix sample_csge(int n, RngStream& rng) {
  Matrix m(n, n);
  double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& e : m.data()) e = rng.normal() * s;
  for (int i = 0; i < n; ++i) m(i, i) += 1.0;
  return m;
}

namespace {

double weight(InvariantFamily family, int n, double x) {
  switch (family) {
    case InvariantFamily::Quartic:
      return n * x * x * x * x;
    case InvariantFamily::Cosh:
      return std::cosh(x);
    case InvariantFamily::GaussCheck:
      return 2.0 * n * x * x;
  }
  return 0.0;
}

}  // namespace

std::vector<double> sample_invariant_spectrum(InvariantFamily family, int n,
                                              const McmcParams& params, RngStream& rng) {
  const double step = params.step_size > 0.0 ? params.step_size : 0.5 / std::sqrt(n);

  std::vector<double> lam(n);
  double span = (family == InvariantFamily::Cosh) ? std::log(2.0 * n + 2.0) : 1.0;
  for (int i = 0; i < n; ++i) lam[i] = span * (2.0 * (i + 0.5) / n - 1.0);

  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = weight(family, n, lam[i]);

  long accepted = 0;
  long proposed = 0;
  auto sweep = [&](bool count) {
    for (int i = 0; i < n; ++i) {
      double cur = lam[i];
      double cand = cur + step * rng.normal();
      double dlog = -(weight(family, n, cand) - w[i]);
      bool reject = false;
      for (int j = 0; j < n && !reject; ++j) {
        if (j == i) continue;
        double dn = cand - lam[j];
        double dc = cur - lam[j];
        if (dn == 0.0) {
          reject = true;  // log-repulsion is -inf at a collision
          break;
        }
        dlog += 2.0 * (std::log(std::abs(dn)) - std::log(std::abs(dc)));
      }
      if (count) ++proposed;
      if (!reject && (dlog >= 0.0 || rng.uniform01() < std::exp(dlog))) {
        lam[i] = cand;
        w[i] = weight(family, n, cand);
        if (count) ++accepted;
      }
    }
  };

  for (int s = 0; s < params.burn_in_sweeps; ++s) sweep(true);
  double rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  if (rate <= 0.05 || rate >= 0.95)
    throw McmcNotConverged("invariant sampler: burn-in acceptance rate " + std::to_string(rate));
  for (int s = 0; s < params.thinning_sweeps; ++s) sweep(false);

  std::sort(lam.begin(), lam.end());
  return lam;
}

ComplexMatrix sample_haar_unitary(int n, RngStream& rng) {
  ComplexMatrix g(n, n);
  for (auto& e : g.data()) e = {rng.normal(), rng.normal()};
  return qr_factor(g).q;
}

ComplexMatrix sample_invariant(InvariantFamily family, int n, const McmcParams& params,
                               RngStream& rng) {
  std::vector<double> lam = sample_invariant_spectrum(family, n, params, rng);
  ComplexMatrix u = sample_haar_unitary(n, rng);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::complex<double> s{};
      for (int k = 0; k < n; ++k) s += u(i, k) * lam[k] * std::conj(u(j, k));
      m(i, j) = s;
    }
  // enforce exact Hermitian symmetry
  for (int i = 0; i < n; ++i) {
    m(i, i) = {m(i, i).real(), 0.0};
    for (int j = i + 1; j < n; ++j) {
      std::complex<double> v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

Vector sample_rhs_uniform(int n, RngStream& rng) {
  Vector b(n);
  for (auto& e : b) e = rng.uniform(-1.0, 1.0);
  return b;
}

}  // namespace ht
