#pragma once

#include <vector>

#include "ht/halting.hpp"
#include "ht/krylov.hpp"
#include "ht/matrix.hpp"
#include "ht/rng.hpp"

namespace ht {

// Star-shaped boundary r(theta) = 1 + sum_j (X_j cos(j theta) + Y_j sin(j theta)).
struct FourierCurve {
  int modes = 0;
  std::vector<double> cosine;  // X_j, j = 1..m
  std::vector<double> sine;    // Y_j
};

enum class BoundaryFamily { Bernoulli, Uniform };  // BDE, UDE

double curve_radius(const FourierCurve& curve, double theta);

// Coefficients iid +-1/(2m) (BDE) or uniform on [-1/(2m), 1/(2m)] (UDE).
// Resamples internally when r(theta_j) <= 0 at a quadrature node; throws
// NonStarShaped after 100 attempts.
FourierCurve sample_boundary(int m, BoundaryFamily family, RngStream& rng);

// Nystrom matrix A = pi I - K for the second-kind double-layer equation on
// the curve, trapezoidal rule at n = 2m nodes theta_j = 2 pi j / n.
Matrix build_operator(const FourierCurve& curve);

// (1/pi) A = I + X_n, the form the GMRES trials run on.
Matrix build_scaled_operator(const FourierCurve& curve);

struct DirichletTrial {
  HaltingRecord record;
  SolveTrace trace;
};

// Samples a curve and boundary data f (iid uniform on [-1,1] at the nodes),
// solves the scaled system with GMRES at threshold eps.
DirichletTrial dirichlet_trial(int m, BoundaryFamily family, double eps, RngStream& rng);

}  // namespace ht
