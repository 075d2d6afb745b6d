// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "botlens/analytics/tokenize.hpp"
#include "botlens/corpus/record.hpp"
#include "botlens/corpus/user_table.hpp"
#include "botlens/partition.hpp"
#include "botlens/timeutil.hpp"

namespace botlens::analytics {

using CountMap = std::unordered_map<std::string, std::uint64_t>;

/// Author class as seen by the aggregates; users missing from the
/// partition (or every user, without one) are `unknown`.
enum class Author : std::uint8_t { human = 0, bot = 1, unknown = 2 };

inline Author author_of(const Partition* partition, const std::string& user_id) {
  if (!partition) return Author::unknown;
  auto it = partition->find(user_id);
  if (it == partition->end()) return Author::unknown;
  return it->second == UserClass::bot ? Author::bot : Author::human;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Tweet counts in one time bin, indexed [author * 2 + is_retweet].
using BinCounts = std::array<std::uint64_t, 6>;

inline void add_counts(CountMap& into, CountMap&& from) {
  if (into.empty()) {
    into = std::move(from);
    return;
  }
  for (auto& [k, v] : from) into[k] += v;
  from.clear();
}

/// Everything the analyses need from one scope of the corpus, accumulated
/// per shard. All members merge by sums, unions or the user-table ordering
/// rule, so merge order never changes the result.
struct ScopeAggregate {
  std::uint64_t tweets = 0;
  std::uint64_t retweets = 0;
  std::uint64_t token_total = 0;
  CountMap hashtags;
  CountMap mentions;
  CountMap urls;
  CountMap tokens;
  CountMap languages;
  std::unordered_map<std::int64_t, BinCounts> bins;  // keyed by bin index
  corpus::UserTable users;
  // Retweets written by human authors, keyed by the retweeted account's id
  // or, for inferred retweets, by its screen name (resolved to an id once
  // all shards are merged).
  CountMap human_retweets_by_id;
  CountMap human_retweets_by_name;

  void add(const corpus::TweetRecord& r, Author author, const Stoplist& stop, std::int64_t bin_seconds) {
    ++tweets;
    const bool rt = r.is_retweet();
    retweets += rt;
    for (const auto& h : r.hashtags) ++hashtags[h];
    for (const auto& m : r.mentions) ++mentions[m];
    for (const auto& u : r.urls) ++urls[u];
    ++languages[r.lang];
    for_each_token(r.text, stop, [&](const std::string& t) {
      ++tokens[t];
      ++token_total;
    });
    const auto bin = floor_div(to_epoch(r.created_at), bin_seconds);
    ++bins[bin][static_cast<std::size_t>(author) * 2 + (rt ? 1 : 0)];
    users.add(r);
    if (author == Author::human && rt) {
      if (r.retweeted_user_id) ++human_retweets_by_id[*r.retweeted_user_id];
      else if (!r.retweeted_screen_name.empty()) ++human_retweets_by_name[r.retweeted_screen_name];
    }
  }

  void merge(ScopeAggregate&& o) {
    tweets += o.tweets;
    retweets += o.retweets;
    token_total += o.token_total;
    add_counts(hashtags, std::move(o.hashtags));
    add_counts(mentions, std::move(o.mentions));
    add_counts(urls, std::move(o.urls));
    add_counts(tokens, std::move(o.tokens));
    add_counts(languages, std::move(o.languages));
    for (const auto& [bin, c] : o.bins) {
      auto& mine = bins[bin];
      for (std::size_t i = 0; i < c.size(); ++i) mine[i] += c[i];
    }
    o.bins.clear();
    users.merge(std::move(o.users));
    add_counts(human_retweets_by_id, std::move(o.human_retweets_by_id));
    add_counts(human_retweets_by_name, std::move(o.human_retweets_by_name));
  }

  void finalize() { users.finalize(); }
};

/// Per-user profile tokens: each distinct user's last-snapshot description
/// is tokenized once, every occurrence within it counted.
inline CountMap profile_token_counts(const corpus::UserTable& users, const Stoplist& stop) {
  CountMap out;
  for (const auto& [id, e] : users.entries())
    for_each_token(e.last.description, stop, [&](const std::string& t) { ++out[t]; });
  return out;
}

/// Single-threaded aggregate over in-memory records.
template <typename Range>
ScopeAggregate aggregate_corpus(const Range& corpus, const Stoplist& stop, const Partition* partition = nullptr,
                                std::int64_t bin_seconds = 60) {
  ScopeAggregate agg;
  for (const corpus::TweetRecord& r : corpus) agg.add(r, author_of(partition, r.user.user_id), stop, bin_seconds);
  agg.finalize();
  return agg;
}

}  // namespace botlens::analytics
