#include "ht/curie_weiss.hpp"

#include <cmath>

#include "ht/errors.hpp"

namespace ht {

namespace {

double drift_term(IntensityKind kind, double m) {
  switch (kind) {
    case IntensityKind::O:
      return m;
    case IntensityKind::U:
      return m - m * m * m / 5.0;
    case IntensityKind::V: {
      double m2 = m * m;
      double m4 = m2 * m2;
      return m + m4 * m4;
    }
  }
  return m;
}

}  // namespace

double intensity(IntensityKind kind, double beta, int spin, double magnetization) {
  return std::exp(-beta * spin * drift_term(kind, magnetization));
}

SpinState initial_state(int n) {
  if (n <= 0 || n % 2 != 0) throw OddN("curie-weiss: N must be even and positive");
  SpinState s;
  s.spins.assign(n, -1);
  for (int i = 0; i < n / 2; ++i) s.spins[i] = 1;
  s.up_count = n / 2;
  return s;
}

StepResult cw_step(SpinState& state, IntensityKind kind, double beta, RngStream& rng) {
  const int n = static_cast<int>(state.spins.size());
  const double m = state.magnetization();
  // intensities depend on the spin only through its sign, so there are just
  // two distinct rates
  const double rate_up = intensity(kind, beta, +1, m);
  const double rate_dn = intensity(kind, beta, -1, m);
  const int ups = state.up_count;
  const int downs = n - ups;
  const double total = ups * rate_up + downs * rate_dn;

  StepResult res;
  res.dt = rng.exponential(1.0 / total);
  state.time += res.dt;

  bool flip_up_spin = rng.uniform01() * total < ups * rate_up;
  // uniform choice within the selected class
  int target = static_cast<int>(rng.uniform_below(flip_up_spin ? ups : downs));
  int seen = 0;
  int idx = -1;
  const std::int8_t wanted = flip_up_spin ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    if (state.spins[i] == wanted && seen++ == target) {
      idx = i;
      break;
    }
  }
  state.spins[idx] = -wanted;
  state.up_count += flip_up_spin ? -1 : 1;
  res.flipped = idx;
  return res;
}

double default_cw_t_max(int n) { return 1e4 * n; }

HaltingRecord cw_run(int n, IntensityKind kind, double beta, double eps, RngStream& rng,
                     double t_max) {
  if (eps <= 0.0 || eps >= 1.0) throw Error("cw_run: eps must lie in (0,1)");
  if (t_max < 0.0) t_max = default_cw_t_max(n);

  HaltingRecord rec;
  rec.algorithm = "curie-weiss";
  rec.n = n;
  rec.epsilon = eps;

  SpinState state = initial_state(n);
  while (state.time <= t_max) {
    cw_step(state, kind, beta, rng);
    if (std::abs(state.magnetization()) >= eps) {
      rec.halting_time = state.time;
      return rec;
    }
  }
  rec.halting_time = t_max;
  rec.capped = true;
  return rec;
}

}  // namespace ht
