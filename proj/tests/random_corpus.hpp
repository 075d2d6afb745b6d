// SPDX-License-Identifier: Apache-2.0
// Random in-memory corpora for the analytics suites.
#pragma once

#include <string>
#include <vector>

#include "botlens/corpus/record.hpp"
#include "botlens/partition.hpp"
#include "botlens/random.hpp"

namespace rc {

using botlens::Rng;
using botlens::corpus::TweetRecord;

inline const std::vector<std::string>& words() {
  static const std::vector<std::string> w = {
      "Macron", "Marine", "élection", "vote", "leaks", "France", "président", "l'équipe", "débat", "RT",
      "the",    "et",     "était",    "2017", "news", "fake",   "d’Emmanuel", "Paris",   "a",      "x1"};
  return w;
}

/// n tweets from `users` accounts over a few hours, with entities, RT
/// prefixes, explicit retweets and a handful of languages.
inline std::vector<TweetRecord> make(std::size_t n, std::size_t users, std::uint64_t seed) {
  Rng rng(seed);
  static const char* langs[] = {"en", "fr", "und", "es", "de"};
  std::vector<TweetRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TweetRecord r;
    r.tweet_id = std::to_string(1000000 + i);
    r.created_at = botlens::from_epoch(1493856000 + static_cast<std::int64_t>(rng.below(6 * 3600)));
    const auto u = rng.below(users);
    r.user.user_id = "u" + std::to_string(u);
    r.user.screen_name = "name" + std::to_string(u);
    r.user.description = words()[u % words().size()] + " " + words()[(u * 7) % words().size()] + " fan";
    r.user.followers_count = rng.below(5000);
    r.user.friends_count = rng.below(3000);
    r.user.favourites_count = rng.below(10000);
    r.user.statuses_count = rng.below(100000);
    r.user.listed_count = rng.below(100);
    r.user.observed_at = r.created_at;
    const auto len = 1 + rng.below(8);
    for (std::size_t k = 0; k < len; ++k) {
      if (k) r.text += ' ';
      r.text += words()[rng.below(words().size())];
    }
    for (auto t = rng.below(3); t > 0; --t) r.hashtags.push_back("tag" + std::to_string(rng.below(40)));
    for (auto t = rng.below(2); t > 0; --t) r.mentions.push_back("name" + std::to_string(rng.below(users)));
    if (rng.bernoulli(0.2)) r.urls.push_back("https://site" + std::to_string(rng.below(15)) + ".example/a");
    r.lang = langs[rng.below(5)];
    const auto kind = rng.below(10);
    if (kind == 0) {
      const auto target = rng.below(users);
      r.retweeted_user_id = "u" + std::to_string(target);
      r.retweeted_tweet_id = std::to_string(rng.below(1000));
    } else if (kind == 1) {
      const auto target = rng.below(users);
      r.inferred_retweet = true;
      r.retweeted_screen_name = "name" + std::to_string(target);
      r.mentions.push_back(r.retweeted_screen_name);
      r.text = "RT @" + r.retweeted_screen_name + ": " + r.text;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline botlens::Partition partition(std::size_t users, double bot_fraction, std::uint64_t seed, bool leave_gaps = false) {
  Rng rng(seed);
  botlens::Partition p;
  for (std::size_t u = 0; u < users; ++u) {
    if (leave_gaps && rng.bernoulli(0.1)) continue;
    p["u" + std::to_string(u)] = rng.bernoulli(bot_fraction) ? botlens::UserClass::bot : botlens::UserClass::human;
  }
  return p;
}

}  // namespace rc
