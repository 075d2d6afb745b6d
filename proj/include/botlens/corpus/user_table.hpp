// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "botlens/corpus/record.hpp"

namespace botlens::corpus {

struct UserEntry {
  UserSnapshot first;
  UserSnapshot last;
  std::string first_tweet_id;
  std::string last_tweet_id;
  std::uint64_t tweet_count = 0;
  std::vector<Timestamp> tweet_timestamps;  // sorted after finalize()
};

/// Per-user accounting. Snapshots are ordered by (observed_at, tweet_id),
/// so add() and merge() commute and the result is independent of input order.
class UserTable {
 public:
  void add(const TweetRecord& r) {
    auto [it, inserted] = entries_.try_emplace(r.user.user_id);
    UserEntry& e = it->second;
    if (inserted) {
      e.first = e.last = r.user;
      e.first_tweet_id = e.last_tweet_id = r.tweet_id;
    } else {
      if (before(r.user.observed_at, r.tweet_id, e.first.observed_at, e.first_tweet_id)) {
        e.first = r.user;
        e.first_tweet_id = r.tweet_id;
      }
      if (before(e.last.observed_at, e.last_tweet_id, r.user.observed_at, r.tweet_id)) {
        e.last = r.user;
        e.last_tweet_id = r.tweet_id;
      }
    }
    ++e.tweet_count;
    e.tweet_timestamps.push_back(r.created_at);
    finalized_ = false;
  }

  void merge(UserTable&& other) {
    for (auto& [id, o] : other.entries_) {
      auto [it, inserted] = entries_.try_emplace(id);
      UserEntry& e = it->second;
      if (inserted) {
        e = std::move(o);
        continue;
      }
      if (before(o.first.observed_at, o.first_tweet_id, e.first.observed_at, e.first_tweet_id)) {
        e.first = std::move(o.first);
        e.first_tweet_id = std::move(o.first_tweet_id);
      }
      if (before(e.last.observed_at, e.last_tweet_id, o.last.observed_at, o.last_tweet_id)) {
        e.last = std::move(o.last);
        e.last_tweet_id = std::move(o.last_tweet_id);
      }
      e.tweet_count += o.tweet_count;
      e.tweet_timestamps.insert(e.tweet_timestamps.end(), o.tweet_timestamps.begin(), o.tweet_timestamps.end());
    }
    other.entries_.clear();
    finalized_ = false;
  }

  void finalize() {
    if (finalized_) return;
    for (auto& [id, e] : entries_) std::sort(e.tweet_timestamps.begin(), e.tweet_timestamps.end());
    finalized_ = true;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const UserEntry* find(const std::string& user_id) const {
    auto it = entries_.find(user_id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::unordered_map<std::string, UserEntry>& entries() const { return entries_; }

  /// Deterministic iteration order for anything that sums floating point.
  std::vector<std::string> sorted_ids() const {
    std::vector<std::string> ids;
    ids.reserve(entries_.size());
    for (const auto& [id, e] : entries_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  std::uint64_t total_tweets() const {
    std::uint64_t n = 0;
    for (const auto& [id, e] : entries_) n += e.tweet_count;
    return n;
  }

 private:
  static bool before(Timestamp ta, const std::string& ida, Timestamp tb, const std::string& idb) {
    return ta < tb || (ta == tb && ida < idb);
  }

  std::unordered_map<std::string, UserEntry> entries_;
  bool finalized_ = true;
};

template <typename Range>
UserTable build_user_table(const Range& corpus) {
  UserTable t;
  for (const TweetRecord& r : corpus) t.add(r);
  t.finalize();
  return t;
}

}  // namespace botlens::corpus
