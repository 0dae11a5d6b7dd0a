#pragma once

#include <cstdint>
#include <vector>

#include "ht/halting.hpp"
#include "ht/rng.hpp"

namespace ht {

enum class IntensityKind { O, U, V };

// Spin-flip intensity c_i = exp(-beta * x_i * g(M)) with
//   g(M) = M            (o),
//   g(M) = M - M^3/5    (u),
//   g(M) = M + M^8      (v).
double intensity(IntensityKind kind, double beta, int spin, double magnetization);

struct SpinState {
  std::vector<std::int8_t> spins;  // values in {-1, +1}
  double time = 0.0;
  int up_count = 0;

  double magnetization() const {
    return (2.0 * up_count - static_cast<double>(spins.size())) / spins.size();
  }
};

SpinState initial_state(int n);  // first n/2 spins up; throws OddN for odd n

struct StepResult {
  double dt = 0.0;
  int flipped = 0;
};

// One Glauber event: exponential waiting time with mean 1/sum_i c_i, flip
// index drawn proportional to c_i.
StepResult cw_step(SpinState& state, IntensityKind kind, double beta, RngStream& rng);

// Continuous decision time inf{t : |M(X(t))| >= eps} from M(X(0)) = 0.
HaltingRecord cw_run(int n, IntensityKind kind, double beta, double eps, RngStream& rng,
                     double t_max = -1.0);

double default_cw_t_max(int n);  // 1e4 * n

}  // namespace ht
