// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "botlens/corpus/record.hpp"
#include "json.hpp"

namespace botlens::corpus {

/// Emits a record in the archive input schema, so that
/// parse_record(to_json(r).dump()) reproduces r.
inline nlohmann::ordered_json to_json(const TweetRecord& r) {
  nlohmann::ordered_json user;
  const UserSnapshot& u = r.user;
  user["id"] = u.user_id;
  user["screen_name"] = u.screen_name;
  user["description"] = u.description;
  if (u.created_at_account) user["created_at"] = format_utc(*u.created_at_account);
  for (std::size_t i = 0; i < std::size(kCountFields); ++i) {
    if (u.present_counts & (1u << i)) user[kCountFields[i].key] = u.*kCountFields[i].slot;
  }
  for (const auto& f : kBoolFields) user[f.key] = u.*f.slot;

  nlohmann::ordered_json j;
  j["id"] = r.tweet_id;
  j["created_at"] = format_utc(r.created_at);
  j["text"] = r.text;
  j["lang"] = r.lang;
  j["hashtags"] = r.hashtags;
  j["mentions"] = r.mentions;
  j["urls"] = r.urls;
  if (r.retweeted_user_id) {
    j["retweeted_user_id"] = *r.retweeted_user_id;
    j["retweeted_tweet_id"] = *r.retweeted_tweet_id;
  }
  j["user"] = std::move(user);
  return j;
}

inline std::string to_line(const TweetRecord& r) { return to_json(r).dump(); }

}  // namespace botlens::corpus
