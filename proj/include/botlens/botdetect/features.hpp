// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "botlens/corpus/record.hpp"

namespace botlens::botdetect {

inline constexpr std::size_t kFeatureCount = 10;
/// The first five slots are counts, the last five binary.
inline constexpr std::size_t kCountFeatureCount = 5;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "statuses_count", "followers_count", "friends_count", "favourites_count", "listed_count",
    "default_profile", "geo_enabled", "profile_use_background_image", "verified", "protected"};

/// Slot indices, in the fixed documented order.
enum Feature : std::size_t {
  statuses_count = 0,
  followers_count,
  friends_count,
  favourites_count,
  listed_count,
  default_profile,
  geo_enabled,
  profile_use_background_image,
  verified,
  protected_account,
};

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  /// All five counts were present in the source snapshot.
  bool complete = true;

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool operator==(const FeatureVector&) const = default;
};

struct LabeledExample {
  FeatureVector features;
  int label = 0;  // 1 = bot, 0 = human
  std::string source_id;
};

inline FeatureVector extract_features(const corpus::UserSnapshot& s) {
  FeatureVector fv;
  for (std::size_t i = 0; i < kCountFeatureCount; ++i)
    fv.values[i] = static_cast<double>(s.*corpus::kCountFields[i].slot);
  for (std::size_t i = 0; i < kCountFeatureCount; ++i)
    fv.values[kCountFeatureCount + i] = (s.*corpus::kBoolFields[i].slot) ? 1.0 : 0.0;
  fv.complete = s.counts_complete();
  return fv;
}

}  // namespace botlens::botdetect
