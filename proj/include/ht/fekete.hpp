#pragma once

#include <array>
#include <span>
#include <vector>

#include "ht/halting.hpp"
#include "ht/rng.hpp"

namespace ht {

enum class Potential { Quadratic, DoubleWell };  // x^2, x^4 - 3 x^2

double potential_value(Potential v, double x);

// H(P) = 2/(N(N-1)) sum_{i != j} log|P_i - P_j|^{-1} + (1/N) sum_i V(P_i).
// Coincident coordinates give +infinity.
double energy(std::span<const double> p, Potential v);

// Offspring perturbation distribution, scale 1/(10 N).
enum class Perturbation { Uniform, Coin, Zero };  // Zero is a test hook

struct Individual {
  std::vector<double> coords;
  double energy = 0.0;
};

struct Population {
  std::vector<Individual> members;  // kept sorted ascending by energy
  long generation = 0;
};

constexpr int kPopulationSize = 100;

// The three mutation offspring: prefix 1..n1, suffix n2+1..N, and middle
// segment 1+min(n1,n2)..max(n1,n2); n1, n2 iid uniform on {1..N}.
std::array<Individual, 3> mutate(const Individual& parent, Perturbation d, Potential v,
                                 RngStream& rng);

// Two crossover offspring: copy of one parent with coordinate n1 replaced by
// the other parent's coordinate n2 plus one perturbation draw (and
// symmetrically).
std::array<Individual, 2> crossover(const Individual& p, const Individual& q, Perturbation d,
                                    Potential v, RngStream& rng);

// One generation: fair coin between mutation and crossover, append the
// offspring, keep the 100 lowest-energy members (ties by insertion order).
void evolve(Population& pop, Perturbation d, Potential v, RngStream& rng);

Population initial_population(int point_count, Potential v, RngStream& rng);

// Runs the GA from a fresh random population until
// min H - h_ref < eps; halting_time is the generation index.
HaltingRecord ga_run(int point_count, Perturbation d, Potential v, double eps, double h_ref,
                     RngStream& rng, long max_iter);

// Oracle for inf H: damped-Newton minimization (deterministic spread-out
// start for x^2; best of 50 random starts for the double well).
double reference_minimum(int point_count, Potential v, RngStream* multistart_rng = nullptr);

}  // namespace ht
