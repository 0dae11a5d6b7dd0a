#include "ht/dirichlet.hpp"

#include <cmath>

#include "ht/ensembles.hpp"
#include "ht/errors.hpp"

namespace ht {

namespace {

constexpr double kPi = 3.141592653589793238462643;

struct NodeData {
  double x, y;      // gamma(theta)
  double dx, dy;    // gamma'
  double ddx, ddy;  // gamma''
};

NodeData node_data(const FourierCurve& curve, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  double r = 1.0, dr = 0.0, ddr = 0.0;
  for (int j = 1; j <= curve.modes; ++j) {
    double cj = std::cos(j * theta), sj = std::sin(j * theta);
    double xj = curve.cosine[j - 1], yj = curve.sine[j - 1];
    r += xj * cj + yj * sj;
    dr += j * (-xj * sj + yj * cj);
    ddr += j * j * (-xj * cj - yj * sj);
  }
  NodeData d;
  d.x = r * c;
  d.y = r * s;
  d.dx = dr * c - r * s;
  d.dy = dr * s + r * c;
  d.ddx = ddr * c - 2.0 * dr * s - r * c;
  d.ddy = ddr * s + 2.0 * dr * c - r * s;
  return d;
}

}  // namespace

double curve_radius(const FourierCurve& curve, double theta) {
  double r = 1.0;
  for (int j = 1; j <= curve.modes; ++j)
    r += curve.cosine[j - 1] * std::cos(j * theta) + curve.sine[j - 1] * std::sin(j * theta);
  return r;
}

FourierCurve sample_boundary(int m, BoundaryFamily family, RngStream& rng) {
  const double bound = 1.0 / (2.0 * m);
  const int n = 2 * m;
  for (int attempt = 0; attempt < 100; ++attempt) {
    FourierCurve curve;
    curve.modes = m;
    curve.cosine.resize(m);
    curve.sine.resize(m);
    for (int j = 0; j < m; ++j) {
      if (family == BoundaryFamily::Bernoulli) {
        curve.cosine[j] = rng.coin_pm1() * bound;
        curve.sine[j] = rng.coin_pm1() * bound;
      } else {
        curve.cosine[j] = rng.uniform(-bound, bound);
        curve.sine[j] = rng.uniform(-bound, bound);
      }
    }
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      ok = curve_radius(curve, 2.0 * kPi * j / n) > 0.0;
    if (ok) return curve;
  }
  throw NonStarShaped("sample_boundary: no star-shaped draw in 100 attempts");
}

Matrix build_operator(const FourierCurve& curve) {
  const int n = 2 * curve.modes;
  std::vector<NodeData> nodes(n);
  for (int j = 0; j < n; ++j) {
    nodes[j] = node_data(curve, 2.0 * kPi * j / n);
    if (curve_radius(curve, 2.0 * kPi * j / n) <= 0.0)
      throw NonStarShaped("build_operator: curve not star-shaped at a node");
  }

  const double weight = 2.0 * kPi / n;
  Matrix a(n, n);
  for (int j = 0; j < n; ++j) {
    const NodeData& p = nodes[j];
    for (int k = 0; k < n; ++k) {
      double kappa;
      if (k == j) {
        // limiting value of the double-layer kernel along the diagonal
        double speed2 = p.dx * p.dx + p.dy * p.dy;
        kappa = (p.dx * p.ddy - p.dy * p.ddx) / (2.0 * speed2);
      } else {
        const NodeData& q = nodes[k];
        double ex = q.x - p.x, ey = q.y - p.y;
        double dist2 = ex * ex + ey * ey;
        // outward normal times |gamma'| is (gamma'_2, -gamma'_1)
        kappa = (q.dy * ex - q.dx * ey) / dist2;
      }
      a(j, k) = -weight * kappa;
    }
    a(j, j) += kPi;
  }
  return a;
}

Matrix build_scaled_operator(const FourierCurve& curve) {
  Matrix a = build_operator(curve);
  for (double& e : a.data()) e /= kPi;
  return a;
}

DirichletTrial dirichlet_trial(int m, BoundaryFamily family, double eps, RngStream& rng) {
  const int n = 2 * m;
  FourierCurve curve = sample_boundary(m, family, rng);
  Matrix a = build_scaled_operator(curve);

  Vector f = sample_rhs_uniform(n, rng);
  while (norm2(f) == 0.0) f = sample_rhs_uniform(n, rng);
  Vector b(n);
  for (int j = 0; j < n; ++j) b[j] = -f[j] / kPi;

  KrylovResult kr = gmres_run(a, b, eps, n);
  DirichletTrial out;
  out.trace = std::move(kr.trace);
  out.record = kr.record;
  out.record.algorithm = "dirichlet";
  out.record.ensemble = family == BoundaryFamily::Bernoulli ? "BDE" : "UDE";
  return out;
}

}  // namespace ht
