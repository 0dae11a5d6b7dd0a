#pragma once

#include <span>
#include <vector>

namespace ht {

// Halting-time samples normalized to mean 0 and unit standard deviation
// (unbiased N-1 variance divisor).
struct FluctuationSet {
  std::vector<double> raw;
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> tau;
};

// Throws TooFewSamples (< 2 samples) or ZeroVariance (constant samples).
FluctuationSet fluctuations(std::span<const double> samples);

struct Histogram {
  std::vector<double> edges;    // bin_count + 1 edges
  std::vector<double> density;  // integrates to 1
};

// Density-normalized histogram on a fixed grid; out-of-range values are
// clipped into the edge bins. Defaults match the overlay convention:
// 40 bins on [-3, 4].
Histogram make_histogram(std::span<const double> values, int bin_count = 40, double lo = -3.0,
                         double hi = 4.0);

// Exact two-sample Kolmogorov-Smirnov statistic sup_x |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace ht
