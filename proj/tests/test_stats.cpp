#include <cmath>
#include <vector>

#include <doctest.h>

#include "ht/errors.hpp"
#include "ht/rng.hpp"
#include "ht/stats.hpp"

using namespace ht;

TEST_CASE("fluctuations examples") {
  auto f = fluctuations(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(f.mean == doctest::Approx(2.0));
  CHECK(f.sd == doctest::Approx(1.0));
  CHECK(f.tau[0] == doctest::Approx(-1.0));
  CHECK(f.tau[1] == doctest::Approx(0.0));
  CHECK(f.tau[2] == doctest::Approx(1.0));

  auto g = fluctuations(std::vector<double>{0.0, 0.0, 1.0, 1.0});
  CHECK(g.tau[0] == doctest::Approx(-0.8660).epsilon(1e-4));
  CHECK(g.tau[3] == doctest::Approx(0.8660).epsilon(1e-4));

  CHECK_THROWS_AS(fluctuations(std::vector<double>{5.0, 5.0, 5.0}), ZeroVariance);
  CHECK_THROWS_AS(fluctuations(std::vector<double>{5.0}), TooFewSamples);
}

TEST_CASE("fluctuations normalize to mean 0 and unit sd") {
  RngStream rng(701, 0);
  std::vector<double> samples(5000);
  for (auto& x : samples) x = 100.0 + 30.0 * rng.normal() + rng.exponential(10.0);
  auto f = fluctuations(samples);
  double mean = 0.0, var = 0.0;
  for (double t : f.tau) mean += t;
  mean /= f.tau.size();
  for (double t : f.tau) var += (t - mean) * (t - mean);
  var /= (f.tau.size() - 1);
  CHECK(std::abs(mean) < 1e-12);
  CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-12);
}

TEST_CASE("fluctuations are affine invariant") {
  RngStream rng(702, 0);
  std::vector<double> x(200), y(200);
  for (int i = 0; i < 200; ++i) {
    x[i] = rng.exponential(3.0);
    y[i] = 7.5 * x[i] - 11.0;
  }
  auto fx = fluctuations(x);
  auto fy = fluctuations(y);
  for (int i = 0; i < 200; ++i) CHECK(std::abs(fx.tau[i] - fy.tau[i]) < 1e-12);
}

TEST_CASE("make_histogram mass, clipping, and default grid") {
  std::vector<double> one(50, 0.25);
  auto h = make_histogram(one);
  REQUIRE(h.edges.size() == 41);
  CHECK(h.edges.front() == -3.0);
  CHECK(h.edges.back() == 4.0);
  double mass = 0.0;
  int occupied = 0;
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    mass += h.density[b] * (h.edges[b + 1] - h.edges[b]);
    if (h.density[b] > 0.0) ++occupied;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(occupied == 1);

  std::vector<double> outliers{-100.0, 100.0};
  auto ho = make_histogram(outliers);
  CHECK(ho.density.front() > 0.0);
  CHECK(ho.density.back() > 0.0);
}

TEST_CASE("make_histogram approximates the normal density") {
  RngStream rng(703, 0);
  std::vector<double> z(100000);
  for (auto& x : z) x = rng.normal();
  auto h = make_histogram(z);
  double worst = 0.0;
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    double mid = 0.5 * (h.edges[b] + h.edges[b + 1]);
    double phi = std::exp(-mid * mid / 2.0) / std::sqrt(2.0 * 3.141592653589793);
    worst = std::max(worst, std::abs(h.density[b] - phi));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("ks_distance examples") {
  std::vector<double> a{0.3, 1.0, 2.5};
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance({0.0}, {1.0}) == 1.0);
  CHECK(ks_distance({1.0, 2.0}, {1.5}) == doctest::Approx(0.5));
}

TEST_CASE("ks_distance handles ties") {
  CHECK(ks_distance({1.0, 1.0, 2.0}, {1.0, 2.0, 2.0}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ks_distance symmetry and triangle bound") {
  RngStream rng(704, 0);
  std::vector<double> a(300), b(400), c(250);
  for (auto& x : a) x = rng.normal();
  for (auto& x : b) x = rng.normal() + 0.5;
  for (auto& x : c) x = rng.exponential(1.0);
  CHECK(ks_distance(a, b) == ks_distance(b, a));
  CHECK(ks_distance(a, c) <= ks_distance(a, b) + ks_distance(b, c) + 1e-15);
  double d = ks_distance(a, b);
  CHECK(d > 0.0);
  CHECK(d < 1.0);
}
