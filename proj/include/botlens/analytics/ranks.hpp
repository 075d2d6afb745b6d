// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/analytics/aggregate.hpp"
#include "botlens/error.hpp"
#include "botlens/stats/rank_frequency.hpp"

namespace botlens::analytics {

enum class RankKind { hashtag, mention, url, token, profile_token, language };

inline constexpr std::array<RankKind, 6> kRankKinds = {RankKind::hashtag, RankKind::mention,       RankKind::url,
                                                       RankKind::token,   RankKind::profile_token, RankKind::language};

inline const char* to_string(RankKind k) {
  switch (k) {
    case RankKind::hashtag: return "hashtags";
    case RankKind::mention: return "mentions";
    case RankKind::url: return "urls";
    case RankKind::token: return "tokens";
    case RankKind::profile_token: return "profile_tokens";
    case RankKind::language: return "languages";
  }
  return "unknown";
}

struct RankTable {
  RankKind kind = RankKind::hashtag;
  std::size_t k = 0;  // requested cutoff, 0 = all rows
  stats::RankFrequency rows;
};

inline constexpr std::size_t kAllRows = 0;

/// Per-occurrence counts for tweet entities, tokens and languages; profile
/// tokens need the per-user map from profile_token_counts().
inline const CountMap& counts_for(const ScopeAggregate& agg, RankKind kind, const CountMap* profile_tokens) {
  switch (kind) {
    case RankKind::hashtag: return agg.hashtags;
    case RankKind::mention: return agg.mentions;
    case RankKind::url: return agg.urls;
    case RankKind::token: return agg.tokens;
    case RankKind::language: return agg.languages;
    case RankKind::profile_token:
      if (!profile_tokens) throw UsageError("profile token ranking needs per-user profile counts");
      return *profile_tokens;
  }
  throw UsageError("unknown rank kind");
}

inline RankTable rank_table(const CountMap& counts, RankKind kind, std::size_t k = kAllRows) {
  RankTable t;
  t.kind = kind;
  t.k = k;
  t.rows = stats::rank_frequency(counts, k == kAllRows ? std::numeric_limits<std::size_t>::max() : k);
  return t;
}

/// Ranks one entity kind straight from records.
template <typename Range>
RankTable rank_entities(const Range& corpus, RankKind kind, std::size_t k, const Stoplist& stop) {
  CountMap counts;
  if (kind == RankKind::profile_token) {
    auto users = corpus::build_user_table(corpus);
    counts = profile_token_counts(users, stop);
  } else {
    for (const corpus::TweetRecord& r : corpus) {
      switch (kind) {
        case RankKind::hashtag:
          for (const auto& h : r.hashtags) ++counts[h];
          break;
        case RankKind::mention:
          for (const auto& m : r.mentions) ++counts[m];
          break;
        case RankKind::url:
          for (const auto& u : r.urls) ++counts[u];
          break;
        case RankKind::token: for_each_token(r.text, stop, [&](const std::string& t) { ++counts[t]; }); break;
        case RankKind::language: ++counts[r.lang]; break;
        case RankKind::profile_token: break;
      }
    }
  }
  return rank_table(counts, kind, k);
}

template <typename Range>
RankTable language_distribution(const Range& corpus) {
  return rank_entities(corpus, RankKind::language, kAllRows, Stoplist{});
}

/// One empirical distribution: entities ranked by frequency plus the
/// histogram "frequency value -> number of entities with that value".
struct Distribution {
  char letter = 'A';
  std::string name;
  stats::RankFrequency ranks;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;  // ascending value
  std::uint64_t total_mass = 0;                                    // sum of counts
};

inline Distribution make_distribution(char letter, std::string name, const CountMap& counts) {
  Distribution d;
  d.letter = letter;
  d.name = std::move(name);
  d.ranks = stats::rank_frequency(counts);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& [entity, c] : counts) {
    ++hist[c];
    d.total_mass += c;
  }
  d.histogram.assign(hist.begin(), hist.end());
  return d;
}

/// The seven distributions: A tweets per user, B tweet tokens, C profile
/// tokens, D languages, E hashtags, F mentions, G URLs.
struct DistributionSuite {
  std::array<Distribution, 7> items;

  const Distribution& operator[](char letter) const { return items.at(static_cast<std::size_t>(letter - 'A')); }
};

inline CountMap tweets_per_user(const corpus::UserTable& users) {
  CountMap m;
  m.reserve(users.size());
  for (const auto& [id, e] : users.entries()) m.emplace(id, e.tweet_count);
  return m;
}

inline DistributionSuite distribution_suite(const ScopeAggregate& agg, const CountMap& profile_tokens) {
  DistributionSuite s;
  s.items[0] = make_distribution('A', "tweets_per_user", tweets_per_user(agg.users));
  s.items[1] = make_distribution('B', "tweet_tokens", agg.tokens);
  s.items[2] = make_distribution('C', "profile_tokens", profile_tokens);
  s.items[3] = make_distribution('D', "languages", agg.languages);
  s.items[4] = make_distribution('E', "hashtags", agg.hashtags);
  s.items[5] = make_distribution('F', "mentions", agg.mentions);
  s.items[6] = make_distribution('G', "urls", agg.urls);
  return s;
}

template <typename Range>
DistributionSuite distribution_suite(const Range& corpus, const Stoplist& stop) {
  auto agg = aggregate_corpus(corpus, stop);
  return distribution_suite(agg, profile_token_counts(agg.users, stop));
}

}  // namespace botlens::analytics
