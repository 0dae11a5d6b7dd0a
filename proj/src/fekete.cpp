#include "ht/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ht/errors.hpp"
#include "ht/linalg.hpp"

namespace ht {

double potential_value(Potential v, double x) {
  return v == Potential::Quadratic ? x * x : x * x * x * x - 3.0 * x * x;
}

double energy(std::span<const double> p, Potential v) {
  const int n = static_cast<int>(p.size());
  double pot = 0.0;
  for (double x : p) pot += potential_value(v, x);
  pot /= n;
  if (n < 2) return pot;

  double inter = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs(p[i] - p[j]);
      if (d == 0.0) return std::numeric_limits<double>::infinity();
      inter -= std::log(d);
    }
  // ordered-pair sum is twice the i<j sum
  return 4.0 / (static_cast<double>(n) * (n - 1)) * inter + pot;
}

namespace {

double draw(Perturbation d, double scale, RngStream& rng) {
  switch (d) {
    case Perturbation::Uniform:
      return rng.uniform(-scale, scale);
    case Perturbation::Coin:
      return rng.coin_pm1() * scale;
    case Perturbation::Zero:
      return 0.0;
  }
  return 0.0;
}

Individual make_individual(std::vector<double> coords, Potential v) {
  Individual ind;
  ind.energy = energy(coords, v);
  ind.coords = std::move(coords);
  return ind;
}

}  // namespace

std::array<Individual, 3> mutate(const Individual& parent, Perturbation d, Potential v,
                                 RngStream& rng) {
  const int n = static_cast<int>(parent.coords.size());
  const double scale = 1.0 / (10.0 * n);
  const int n1 = 1 + static_cast<int>(rng.uniform_below(n));
  const int n2 = 1 + static_cast<int>(rng.uniform_below(n));

  std::vector<double> a = parent.coords;
  for (int i = 0; i < n1; ++i) a[i] += draw(d, scale, rng);

  std::vector<double> b = parent.coords;
  for (int i = n2; i < n; ++i) b[i] += draw(d, scale, rng);

  // segment 1+min(n1,n2) .. max(n1,n2); empty when n1 == n2
  std::vector<double> c = parent.coords;
  const int lo = std::min(n1, n2);
  const int hi = std::max(n1, n2);
  for (int i = lo; i < hi; ++i) c[i] += draw(d, scale, rng);

  return {make_individual(std::move(a), v), make_individual(std::move(b), v),
          make_individual(std::move(c), v)};
}

std::array<Individual, 2> crossover(const Individual& p, const Individual& q, Perturbation d,
                                    Potential v, RngStream& rng) {
  const int n = static_cast<int>(p.coords.size());
  const double scale = 1.0 / (10.0 * n);
  const int n1 = static_cast<int>(rng.uniform_below(n));
  const int n2 = static_cast<int>(rng.uniform_below(n));

  std::vector<double> a = p.coords;
  a[n1] = q.coords[n2] + draw(d, scale, rng);
  std::vector<double> b = q.coords;
  b[n1] = p.coords[n2] + draw(d, scale, rng);

  return {make_individual(std::move(a), v), make_individual(std::move(b), v)};
}

void evolve(Population& pop, Perturbation d, Potential v, RngStream& rng) {
  const std::size_t size = pop.members.size();
  bool do_mutation = rng.uniform01() < 0.5;
  if (do_mutation) {
    std::size_t idx = rng.uniform_below(size);
    auto kids = mutate(pop.members[idx], d, v, rng);
    for (auto& k : kids) pop.members.push_back(std::move(k));
  } else {
    std::size_t i = rng.uniform_below(size);
    std::size_t j = rng.uniform_below(size - 1);
    if (j >= i) ++j;
    auto kids = crossover(pop.members[i], pop.members[j], d, v, rng);
    for (auto& k : kids) pop.members.push_back(std::move(k));
  }
  std::stable_sort(pop.members.begin(), pop.members.end(),
                   [](const Individual& a, const Individual& b) { return a.energy < b.energy; });
  pop.members.resize(kPopulationSize);
  ++pop.generation;
}

Population initial_population(int point_count, Potential v, RngStream& rng) {
  Population pop;
  pop.members.reserve(kPopulationSize + 3);
  for (int i = 0; i < kPopulationSize; ++i) {
    std::vector<double> coords(point_count);
    for (double& x : coords) x = rng.uniform(-4.0, 4.0);
    pop.members.push_back(make_individual(std::move(coords), v));
  }
  std::stable_sort(pop.members.begin(), pop.members.end(),
                   [](const Individual& a, const Individual& b) { return a.energy < b.energy; });
  return pop;
}

HaltingRecord ga_run(int point_count, Perturbation d, Potential v, double eps, double h_ref,
                     RngStream& rng, long max_iter) {
  HaltingRecord rec;
  rec.algorithm = "ga";
  rec.n = point_count;
  rec.epsilon = eps;

  Population pop = initial_population(point_count, v, rng);
  long k = 0;
  bool halted = pop.members.front().energy - h_ref < eps;
  while (!halted && k < max_iter) {
    evolve(pop, d, v, rng);
    ++k;
    halted = pop.members.front().energy - h_ref < eps;
  }
  rec.halting_time = static_cast<double>(k);
  rec.capped = !halted;
  return rec;
}

namespace {

double potential_d1(Potential v, double x) {
  return v == Potential::Quadratic ? 2.0 * x : 4.0 * x * x * x - 6.0 * x;
}
double potential_d2(Potential v, double x) {
  return v == Potential::Quadratic ? 2.0 : 12.0 * x * x - 6.0;
}

// Damped Newton on H; returns true when the gradient norm drops below tol.
bool newton_minimize(std::vector<double>& p, Potential v, double tol, double& value) {
  const int n = static_cast<int>(p.size());
  const double c = n > 1 ? 2.0 / (static_cast<double>(n) * (n - 1)) : 0.0;

  for (int iter = 0; iter < 500; ++iter) {
    Vector grad(n, 0.0);
    Matrix hess(n, n);
    for (int k = 0; k < n; ++k) {
      double g = potential_d1(v, p[k]) / n;
      double hkk = potential_d2(v, p[k]) / n;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        double diff = p[k] - p[j];
        g -= 2.0 * c / diff;
        double inv2 = 2.0 * c / (diff * diff);
        hkk += inv2;
        hess(k, j) = -inv2;
      }
      grad[k] = g;
      hess(k, k) = hkk;
    }

    double gnorm = norm2(grad);
    value = energy(p, v);
    if (gnorm < tol) return true;

    Vector step;
    bool have_newton = false;
    try {
      step = solve(hess, grad);
      have_newton = dot(step, grad) > 0.0;  // descent along -step
    } catch (const RankDeficient&) {
    }
    if (!have_newton) {
      step = grad;
      double s = 1.0 / std::max(gnorm, 1.0);
      for (double& e : step) e *= s;
    }

    double h0 = value;
    double t = 1.0;
    bool moved = false;
    std::vector<double> cand(n);
    for (int back = 0; back < 60; ++back) {
      for (int i = 0; i < n; ++i) cand[i] = p[i] - t * step[i];
      double h1 = energy(cand, v);
      if (h1 < h0) {
        p = cand;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      value = h0;
      return gnorm < 1e-9;  // stalled; accept only near-stationary points
    }
  }
  value = energy(p, v);
  return false;
}

}  // namespace

double reference_minimum(int point_count, Potential v, RngStream* multistart_rng) {
  const double tol = 1e-12;
  double best = std::numeric_limits<double>::infinity();
  bool converged = false;

  {
    // deterministic spread-out start
    std::vector<double> p(point_count);
    for (int i = 0; i < point_count; ++i)
      p[i] = point_count > 1 ? -1.5 + 3.0 * i / (point_count - 1) : 0.0;
    double val;
    if (newton_minimize(p, v, tol, val)) {
      best = val;
      converged = true;
    }
  }

  if (v == Potential::DoubleWell) {
    RngStream local(0xFEC0DEULL, 0);
    RngStream& rng = multistart_rng ? *multistart_rng : local;
    for (int s = 0; s < 50; ++s) {
      std::vector<double> p(point_count);
      for (double& x : p) x = rng.uniform(-2.5, 2.5);
      std::sort(p.begin(), p.end());
      double val;
      if (newton_minimize(p, v, tol, val) && val < best) {
        best = val;
        converged = true;
      }
    }
  }

  if (!converged) throw NonConvergence("reference_minimum: no start met the gradient tolerance");
  return best;
}

}  // namespace ht
