// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <span>

#include "botlens/botdetect/features.hpp"
#include "botlens/error.hpp"

namespace botlens::botdetect {

using ScaledVector = std::array<double, kFeatureCount>;

/// log1p then z-score on the count features; binary features pass through.
struct Scaler {
  std::array<double, kCountFeatureCount> mean{};
  std::array<double, kCountFeatureCount> sd{1.0, 1.0, 1.0, 1.0, 1.0};

  static constexpr double kMinSd = 1e-12;

  ScaledVector transform(const FeatureVector& fv) const {
    ScaledVector out = fv.values;
    for (std::size_t i = 0; i < kCountFeatureCount; ++i) out[i] = (std::log1p(fv.values[i]) - mean[i]) / sd[i];
    return out;
  }

  bool operator==(const Scaler&) const = default;
};

/// Population mean/sd of log1p(count) per count feature. A constant
/// feature keeps sd = 1.
inline Scaler fit_scaler(std::span<const LabeledExample> examples) {
  if (examples.size() < 2) throw DataError("fit_scaler needs at least 2 examples");
  Scaler s;
  const double n = static_cast<double>(examples.size());
  for (std::size_t i = 0; i < kCountFeatureCount; ++i) {
    double m = 0.0;
    for (const auto& e : examples) m += std::log1p(e.features[i]);
    m /= n;
    double ss = 0.0;
    for (const auto& e : examples) {
      const double d = std::log1p(e.features[i]) - m;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / n);
    s.mean[i] = m;
    s.sd[i] = sd < Scaler::kMinSd ? 1.0 : sd;
  }
  return s;
}

}  // namespace botlens::botdetect
