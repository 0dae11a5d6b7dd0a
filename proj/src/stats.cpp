#include "ht/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ht/errors.hpp"

namespace ht {

FluctuationSet fluctuations(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw TooFewSamples("fluctuations: need at least 2 samples");

  FluctuationSet fs;
  fs.raw.assign(samples.begin(), samples.end());

  double mean = 0.0;
  for (double x : fs.raw) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : fs.raw) var += (x - mean) * (x - mean);
  var /= (n - 1);
  if (var == 0.0) throw ZeroVariance("fluctuations: all samples equal");

  fs.mean = mean;
  fs.sd = std::sqrt(var);
  fs.tau.resize(n);
  for (std::size_t i = 0; i < n; ++i) fs.tau[i] = (fs.raw[i] - mean) / fs.sd;
  return fs;
}

Histogram make_histogram(std::span<const double> values, int bin_count, double lo, double hi) {
  Histogram h;
  h.edges.resize(bin_count + 1);
  const double width = (hi - lo) / bin_count;
  for (int i = 0; i <= bin_count; ++i) h.edges[i] = lo + width * i;

  std::vector<double> counts(bin_count, 0.0);
  for (double v : values) {
    int bin = static_cast<int>(std::floor((v - lo) / width));
    bin = std::clamp(bin, 0, bin_count - 1);  // clip into edge bins
    counts[bin] += 1.0;
  }
  const double mass = static_cast<double>(values.size()) * width;
  h.density.resize(bin_count);
  for (int i = 0; i < bin_count; ++i) h.density[i] = mass > 0.0 ? counts[i] / mass : 0.0;
  return h;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  std::size_t ia = 0, ib = 0;
  double best = 0.0;
  while (ia < na || ib < nb) {
    double x = (ia < na && (ib >= nb || a[ia] <= b[ib])) ? a[ia] : b[ib];
    while (ia < na && a[ia] == x) ++ia;
    while (ib < nb && b[ib] == x) ++ib;
    double d = std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace ht
