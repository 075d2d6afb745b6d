// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "botlens/analytics/aggregate.hpp"
#include "botlens/error.hpp"

namespace botlens::analytics {

struct TimelineSeries {
  std::string label;
  std::vector<std::uint64_t> counts;  // one per bin

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

/// Dense fixed-width bins from the first to the last nonempty bin, zeros
/// included. Bin i starts at first_bin_start + i * bin_seconds (UTC).
struct Timeline {
  std::int64_t bin_seconds = 60;
  std::int64_t first_bin_start = 0;
  std::size_t bins = 0;
  std::vector<TimelineSeries> series;

  const TimelineSeries* find(const std::string& label) const {
    for (const auto& s : series)
      if (s.label == label) return &s;
    return nullptr;
  }
};

struct TimelineOptions {
  /// Emit bots/humans/unknown series next to "all".
  bool by_class = false;
  /// Also emit `<label>_original` and `<label>_retweets` for every series.
  bool split_retweets = false;
};

inline Timeline build_timeline(const std::unordered_map<std::int64_t, BinCounts>& bins, std::int64_t bin_seconds,
                               const TimelineOptions& opts = {}) {
  if (bin_seconds < 1) throw UsageError("timeline bin width must be at least 1 second");
  Timeline tl;
  tl.bin_seconds = bin_seconds;
  std::int64_t lo = 0, hi = -1;
  bool any = false;
  for (const auto& [bin, c] : bins) {
    std::uint64_t n = 0;
    for (auto v : c) n += v;
    if (n == 0) continue;
    if (!any || bin < lo) lo = bin;
    if (!any || bin > hi) hi = bin;
    any = true;
  }
  const std::size_t n_bins = any ? static_cast<std::size_t>(hi - lo + 1) : 0;
  tl.bins = n_bins;
  tl.first_bin_start = any ? lo * bin_seconds : 0;

  // Each series is a sum over a subset of the six (author, retweet) cells.
  struct Spec {
    std::string label;
    unsigned mask;
  };
  std::vector<Spec> specs{{"all", 0x3F}};
  if (opts.by_class) {
    specs.push_back({"bots", 0x0C});
    specs.push_back({"humans", 0x03});
    specs.push_back({"unknown", 0x30});
  }
  if (opts.split_retweets) {
    const std::size_t base = specs.size();
    for (std::size_t i = 0; i < base; ++i) {
      specs.push_back({specs[i].label + "_original", specs[i].mask & 0x15});
      specs.push_back({specs[i].label + "_retweets", specs[i].mask & 0x2A});
    }
  }
  for (const auto& spec : specs) tl.series.push_back({spec.label, std::vector<std::uint64_t>(n_bins, 0)});
  for (const auto& [bin, c] : bins) {
    if (!any || bin < lo || bin > hi) continue;
    const auto idx = static_cast<std::size_t>(bin - lo);
    for (std::size_t s = 0; s < specs.size(); ++s)
      for (std::size_t cell = 0; cell < c.size(); ++cell)
        if (specs[s].mask & (1u << cell)) tl.series[s].counts[idx] += c[cell];
  }
  return tl;
}

/// Timeline straight from records.
template <typename Range>
Timeline timeline(const Range& corpus, std::int64_t bin_seconds = 60, const Partition* partition = nullptr,
                  bool split_retweets = false) {
  if (bin_seconds < 1) throw UsageError("timeline bin width must be at least 1 second");
  std::unordered_map<std::int64_t, BinCounts> bins;
  for (const corpus::TweetRecord& r : corpus) {
    const auto a = author_of(partition, r.user.user_id);
    ++bins[floor_div(to_epoch(r.created_at), bin_seconds)][static_cast<std::size_t>(a) * 2 + (r.is_retweet() ? 1 : 0)];
  }
  return build_timeline(bins, bin_seconds, {partition != nullptr, split_retweets});
}

}  // namespace botlens::analytics
