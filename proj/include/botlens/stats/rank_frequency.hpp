// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace botlens::stats {

struct RankRow {
  std::size_t rank = 0;
  std::string entity;
  std::uint64_t count = 0;

  bool operator==(const RankRow&) const = default;
};

/// Rows by descending count, ties broken by entity ascending; ranks 1..n.
struct RankFrequency {
  std::vector<RankRow> rows;

  /// (log10 rank, log10 count) pairs for plotting; zero counts are skipped.
  std::vector<std::pair<double, double>> log_log() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
      if (r.count > 0) out.emplace_back(std::log10(static_cast<double>(r.rank)), std::log10(static_cast<double>(r.count)));
    return out;
  }
};

inline bool rank_order(const std::pair<std::string, std::uint64_t>& a, const std::pair<std::string, std::uint64_t>& b) {
  return a.second != b.second ? a.second > b.second : a.first < b.first;
}

/// Accepts any range of (entity, count) pairs, e.g. a hash map. `limit`
/// keeps the top rows only.
template <typename CountMap>
RankFrequency rank_frequency(const CountMap& counts, std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  std::vector<std::pair<std::string, std::uint64_t>> items;
  items.reserve(counts.size());
  for (const auto& [entity, count] : counts) items.emplace_back(entity, static_cast<std::uint64_t>(count));
  const std::size_t keep = std::min(limit, items.size());
  if (keep < items.size()) {
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(keep), items.end(), rank_order);
    items.resize(keep);
  } else {
    std::sort(items.begin(), items.end(), rank_order);
  }
  RankFrequency rf;
  rf.rows.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) rf.rows.push_back({i + 1, std::move(items[i].first), items[i].second});
  return rf;
}

}  // namespace botlens::stats
