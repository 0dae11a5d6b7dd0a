#pragma once

#include <stdexcept>
#include <string>

namespace ht {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct DimensionTooLarge : Error {
  using Error::Error;
};

struct McmcNotConverged : Error {
  using Error::Error;
};

struct NonStarShaped : Error {
  using Error::Error;
};

struct BreakdownNonSPD : Error {
  using Error::Error;
};

struct ZeroVariance : Error {
  using Error::Error;
};

struct TooFewSamples : Error {
  using Error::Error;
};

struct OddN : Error {
  using Error::Error;
};

struct NonConvergence : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

}  // namespace ht
