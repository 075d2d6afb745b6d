// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "botlens/analytics/aggregate.hpp"
#include "botlens/partition.hpp"

namespace botlens::analytics {

struct FollowerDelta {
  std::string user_id;
  std::string screen_name;
  std::uint64_t followers_before = 0;  // first snapshot
  std::uint64_t followers_after = 0;   // last snapshot
  std::uint64_t tweets_in_scope = 0;
  std::uint64_t retweets_received_from_humans = 0;

  bool operator==(const FollowerDelta&) const = default;
};

/// Screen name -> user id from last snapshots. A name held by several ids
/// resolves to the smallest id.
inline std::unordered_map<std::string, std::string> screen_name_index(const corpus::UserTable& users) {
  std::unordered_map<std::string, std::string> idx;
  for (const auto& [id, e] : users.entries()) {
    if (e.last.screen_name.empty()) continue;
    auto [it, inserted] = idx.try_emplace(e.last.screen_name, id);
    if (!inserted && id < it->second) it->second = id;
  }
  return idx;
}

/// One row per bot seen in the scope, ranked by retweets received from
/// human authors (descending), then user id. `k` = 0 keeps every row.
inline std::vector<FollowerDelta> follower_deltas(const ScopeAggregate& agg, const Partition& partition,
                                                  std::size_t k = 0) {
  std::unordered_map<std::string, std::uint64_t> received(agg.human_retweets_by_id.begin(),
                                                          agg.human_retweets_by_id.end());
  if (!agg.human_retweets_by_name.empty()) {
    const auto idx = screen_name_index(agg.users);
    for (const auto& [name, n] : agg.human_retweets_by_name) {
      auto it = idx.find(name);
      if (it != idx.end()) received[it->second] += n;
    }
  }
  std::vector<FollowerDelta> rows;
  for (const auto& [id, e] : agg.users.entries()) {
    auto it = partition.find(id);
    if (it == partition.end() || it->second != UserClass::bot) continue;
    FollowerDelta d;
    d.user_id = id;
    d.screen_name = e.last.screen_name;
    d.followers_before = e.first.followers_count;
    d.followers_after = e.last.followers_count;
    d.tweets_in_scope = e.tweet_count;
    if (auto r = received.find(id); r != received.end()) d.retweets_received_from_humans = r->second;
    rows.push_back(std::move(d));
  }
  auto order = [](const FollowerDelta& a, const FollowerDelta& b) {
    if (a.retweets_received_from_humans != b.retweets_received_from_humans)
      return a.retweets_received_from_humans > b.retweets_received_from_humans;
    return a.user_id < b.user_id;
  };
  if (k > 0 && k < rows.size()) {
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k), rows.end(), order);
    rows.resize(k);
  } else {
    std::sort(rows.begin(), rows.end(), order);
  }
  return rows;
}

}  // namespace botlens::analytics
