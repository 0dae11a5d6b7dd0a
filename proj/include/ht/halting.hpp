#pragma once

#include <cstdint>
#include <string>

namespace ht {

// One trial's halting time plus metadata. Integer-valued halting times
// (iteration counts) are stored in the same double field as continuous
// decision times.
struct HaltingRecord {
  double halting_time = 0.0;
  std::string algorithm;
  std::string ensemble;
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t seed_stream = 0;
  bool capped = false;
};

}  // namespace ht
