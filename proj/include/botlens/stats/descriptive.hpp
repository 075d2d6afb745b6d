// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>

#include "botlens/error.hpp"

namespace botlens::stats {

struct MeanSd {
  double mean = 0.0;
  /// Population convention (divisor n), as used for descriptive reporting.
  double sd = 0.0;
};

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw DataError("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Two-pass mean and population standard deviation.
inline MeanSd mean_sd(std::span<const double> xs) {
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size()))};
}

/// Unbiased sample variance (divisor n - 1), used inside the tests.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw DataError("sample variance needs at least 2 values");
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace botlens::stats
