#pragma once

#include <cmath>
#include <cstdint>

namespace ht {

// Counter-based splittable stream keyed by (master_seed, stream_index).
// Each 64-bit output is a stateless mix of (key, counter), so a stream
// replayed from the same key reproduces the identical sequence and trial
// results cannot depend on scheduling order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_(mix(mix(master_seed) ^ mix(stream_index + 0x632be59bd9b4e019ULL))),
        stream_index_(stream_index) {}

  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (counter_++) * 0x9e3779b97f4a7c15ULL;
    return mix(z);
  }

  // uniform on [0, 1)
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on (0, 1]; safe under log()
  double open01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // standard normal, Box-Muller with a cached spare
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = open01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double exponential(double mean) { return -mean * std::log(open01()); }

  // uniform on {0, 1, ..., n-1} via Lemire's multiply-shift
  std::uint64_t uniform_below(std::uint64_t n) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint64_t>(m >> 64);
  }

  // fair coin on {-1, +1}
  int coin_pm1() { return (next_u64() >> 63) ? 1 : -1; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t stream_index_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ht
