// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <rapidjson/document.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "botlens/text.hpp"
#include "botlens/timeutil.hpp"

namespace botlens::corpus {

/// The account fields as observed at one tweet's timestamp.
struct UserSnapshot {
  std::string user_id;
  std::string screen_name;  // lowercase
  std::string description;
  std::optional<Timestamp> created_at_account;
  std::uint64_t statuses_count = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t favourites_count = 0;
  std::uint64_t listed_count = 0;
  bool default_profile = false;
  bool geo_enabled = false;
  bool profile_use_background_image = false;
  bool verified = false;
  bool is_protected = false;
  /// Bit i set when count i (statuses, followers, friends, favourites,
  /// listed) was present in the source; absent counts read as 0.
  std::uint8_t present_counts = kAllCounts;
  Timestamp observed_at{};

  static constexpr std::uint8_t kAllCounts = 0x1F;
  bool counts_complete() const { return present_counts == kAllCounts; }

  bool operator==(const UserSnapshot&) const = default;
};

struct TweetRecord {
  std::string tweet_id;
  Timestamp created_at{};
  std::string text;
  UserSnapshot user;
  std::vector<std::string> hashtags;  // lowercase, no '#'
  std::vector<std::string> mentions;  // lowercase, no '@'
  std::vector<std::string> urls;
  std::string lang = "und";
  // Explicit linkage: both present or both absent.
  std::optional<std::string> retweeted_user_id;
  std::optional<std::string> retweeted_tweet_id;
  // "RT @name" prefix without explicit linkage. The screen name is kept only
  // when it also appears in `mentions`; resolution to a user id happens
  // corpus-wide.
  bool inferred_retweet = false;
  std::string retweeted_screen_name;

  bool is_retweet() const { return retweeted_user_id.has_value() || inferred_retweet; }

  bool operator==(const TweetRecord&) const = default;
};

struct CountField {
  const char* key;
  std::uint64_t UserSnapshot::*slot;
};

/// Fixed order shared by parsing, serialization and feature extraction.
inline constexpr CountField kCountFields[] = {
    {"statuses_count", &UserSnapshot::statuses_count},
    {"followers_count", &UserSnapshot::followers_count},
    {"friends_count", &UserSnapshot::friends_count},
    {"favourites_count", &UserSnapshot::favourites_count},
    {"listed_count", &UserSnapshot::listed_count},
};

struct BoolField {
  const char* key;
  bool UserSnapshot::*slot;
};

inline constexpr BoolField kBoolFields[] = {
    {"default_profile", &UserSnapshot::default_profile},
    {"geo_enabled", &UserSnapshot::geo_enabled},
    {"profile_use_background_image", &UserSnapshot::profile_use_background_image},
    {"verified", &UserSnapshot::verified},
    {"protected", &UserSnapshot::is_protected},
};

enum class FailureReason { json, missing_field, timestamp, invalid_field };

inline const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::json: return "json";
    case FailureReason::missing_field: return "missing_field";
    case FailureReason::timestamp: return "timestamp";
    case FailureReason::invalid_field: return "invalid_field";
  }
  return "unknown";
}

struct ParseFailure {
  std::size_t line = 0;
  FailureReason reason = FailureReason::json;
  std::string detail;
};

using ParseResult = std::variant<TweetRecord, ParseFailure>;

namespace detail {

using JsonValue = rapidjson::Value;

inline const JsonValue* member(const JsonValue& obj, const char* key) {
  auto it = obj.FindMember(key);
  if (it == obj.MemberEnd() || it->value.IsNull()) return nullptr;
  return &it->value;
}

inline std::string_view view(const JsonValue& v) { return {v.GetString(), v.GetStringLength()}; }

// Ids arrive as strings or (in older dumps) as integers.
inline std::optional<std::string> read_id(const JsonValue& v) {
  if (v.IsString()) return std::string(view(v));
  if (v.IsUint64()) return std::to_string(v.GetUint64());
  if (v.IsInt64()) return std::to_string(v.GetInt64());
  return std::nullopt;
}

inline std::optional<Timestamp> read_time(const JsonValue& v) {
  if (v.IsString()) return parse_timestamp(view(v));
  if (v.IsInt64()) return from_epoch(v.GetInt64());
  if (v.IsUint64()) return std::nullopt;
  if (v.IsDouble()) {
    double d = v.GetDouble();
    if (!std::isfinite(d) || std::fabs(d) > 1e15) return std::nullopt;
    return from_epoch(static_cast<std::int64_t>(std::floor(d)));
  }
  return std::nullopt;
}

enum class CountRead { absent, ok, invalid };

inline CountRead read_count(const JsonValue& obj, const char* key, std::uint64_t& out) {
  const JsonValue* v = member(obj, key);
  if (!v) return CountRead::absent;
  if (v->IsUint64()) {
    out = v->GetUint64();
    return CountRead::ok;
  }
  if (v->IsDouble()) {
    double d = v->GetDouble();
    if (std::isfinite(d) && d >= 0 && d == std::floor(d) && d < 1.8e19) {
      out = static_cast<std::uint64_t>(d);
      return CountRead::ok;
    }
  }
  return CountRead::invalid;
}

inline bool read_bool(const JsonValue& obj, const char* key, bool& out) {
  const JsonValue* v = member(obj, key);
  if (!v) {
    out = false;
    return true;
  }
  if (v->IsBool()) {
    out = v->GetBool();
    return true;
  }
  if (v->IsInt() && (v->GetInt() == 0 || v->GetInt() == 1)) {
    out = v->GetInt() == 1;
    return true;
  }
  return false;
}

inline std::string strip_prefix_lower(std::string_view s, char prefix) {
  while (!s.empty() && s.front() == prefix) s.remove_prefix(1);
  return text::to_lower(s);
}

// Flat string arrays ("hashtags": ["x"]) or the platform's entity objects
// ("entities": {"hashtags": [{"text": "x"}]}).
inline bool read_entity_list(const JsonValue& v, const char* object_key, std::vector<std::string>& out,
                             char prefix) {
  if (!v.IsArray()) return false;
  out.reserve(v.Size());
  for (const auto& e : v.GetArray()) {
    const JsonValue* s = &e;
    if (e.IsObject()) s = member(e, object_key);
    if (!s || !s->IsString()) return false;
    out.push_back(prefix ? strip_prefix_lower(view(*s), prefix) : std::string(view(*s)));
  }
  return true;
}

inline bool starts_with_rt(std::string_view t) {
  return t.size() >= 4 && (t[0] == 'R' || t[0] == 'r') && (t[1] == 'T' || t[1] == 't') && t[2] == ' ' &&
         t[3] == '@';
}

}  // namespace detail

/// Parses and normalizes one archive line. `line_no` is carried into any
/// failure for reporting.
inline ParseResult parse_record(std::string_view line, std::size_t line_no = 0) {
  using namespace detail;
  auto fail = [line_no](FailureReason r, std::string detail) -> ParseResult {
    return ParseFailure{line_no, r, std::move(detail)};
  };

  rapidjson::Document doc;
  doc.Parse(line.data(), line.size());
  if (doc.HasParseError()) return fail(FailureReason::json, "malformed JSON");
  if (!doc.IsObject()) return fail(FailureReason::json, "line is not a JSON object");

  TweetRecord rec;
  const JsonValue* id = member(doc, "id");
  if (!id) id = member(doc, "id_str");
  if (!id) return fail(FailureReason::missing_field, "id");
  auto tid = read_id(*id);
  if (!tid || tid->empty()) return fail(FailureReason::invalid_field, "id");
  rec.tweet_id = std::move(*tid);

  const JsonValue* created = member(doc, "created_at");
  if (!created) return fail(FailureReason::missing_field, "created_at");
  auto ts = read_time(*created);
  if (!ts) return fail(FailureReason::timestamp, "created_at");
  rec.created_at = *ts;

  const JsonValue* txt = member(doc, "full_text");
  if (!txt) txt = member(doc, "text");
  if (!txt) return fail(FailureReason::missing_field, "text");
  if (!txt->IsString()) return fail(FailureReason::invalid_field, "text");
  rec.text.assign(view(*txt));

  const JsonValue* user = member(doc, "user");
  if (!user || !user->IsObject()) return fail(FailureReason::missing_field, "user");
  const JsonValue* uid = member(*user, "id");
  if (!uid) uid = member(*user, "id_str");
  if (!uid) return fail(FailureReason::missing_field, "user.id");
  auto user_id = read_id(*uid);
  if (!user_id || user_id->empty()) return fail(FailureReason::invalid_field, "user.id");

  UserSnapshot& u = rec.user;
  u.user_id = std::move(*user_id);
  u.observed_at = rec.created_at;
  if (const JsonValue* v = member(*user, "screen_name")) {
    if (!v->IsString()) return fail(FailureReason::invalid_field, "user.screen_name");
    u.screen_name = strip_prefix_lower(view(*v), '@');
  }
  if (const JsonValue* v = member(*user, "description")) {
    if (!v->IsString()) return fail(FailureReason::invalid_field, "user.description");
    u.description.assign(view(*v));
  }
  if (const JsonValue* v = member(*user, "created_at")) {
    auto acct = read_time(*v);
    if (!acct) return fail(FailureReason::timestamp, "user.created_at");
    u.created_at_account = *acct;
  }

  u.present_counts = 0;
  for (std::size_t i = 0; i < std::size(kCountFields); ++i) {
    const auto& f = kCountFields[i];
    switch (read_count(*user, f.key, u.*f.slot)) {
      case CountRead::ok: u.present_counts |= static_cast<std::uint8_t>(1u << i); break;
      case CountRead::absent: break;
      case CountRead::invalid: return fail(FailureReason::invalid_field, std::string("user.") + f.key);
    }
  }

  for (const auto& f : kBoolFields) {
    if (!read_bool(*user, f.key, u.*f.slot))
      return fail(FailureReason::invalid_field, std::string("user.") + f.key);
  }

  const JsonValue* entities = member(doc, "entities");
  if (entities && !entities->IsObject()) entities = nullptr;
  auto load_entities = [&](const char* flat_key, const char* nested_key, const char* object_key,
                           std::vector<std::string>& out, char prefix) -> int {
    const JsonValue* v = member(doc, flat_key);
    if (!v && entities) v = member(*entities, nested_key);
    if (!v) return 0;
    return read_entity_list(*v, object_key, out, prefix) ? 1 : -1;
  };
  int have_tags = load_entities("hashtags", "hashtags", "text", rec.hashtags, '#');
  int have_mentions = load_entities("mentions", "user_mentions", "screen_name", rec.mentions, '@');
  int have_urls = load_entities("urls", "urls", "expanded_url", rec.urls, 0);
  if (have_tags < 0) return fail(FailureReason::invalid_field, "hashtags");
  if (have_mentions < 0) return fail(FailureReason::invalid_field, "mentions");
  if (have_urls < 0) return fail(FailureReason::invalid_field, "urls");
  if (have_tags == 0 || have_mentions == 0 || have_urls == 0) {
    auto found = text::extract_entities(rec.text);
    if (have_tags == 0) rec.hashtags = std::move(found.hashtags);
    if (have_mentions == 0) rec.mentions = std::move(found.mentions);
    if (have_urls == 0) rec.urls = std::move(found.urls);
  }

  if (const JsonValue* v = member(doc, "lang")) {
    if (!v->IsString()) return fail(FailureReason::invalid_field, "lang");
    if (v->GetStringLength() > 0) rec.lang = text::to_lower(view(*v));
  }

  const JsonValue* rt_user = member(doc, "retweeted_user_id");
  const JsonValue* rt_tweet = member(doc, "retweeted_tweet_id");
  if ((rt_user == nullptr) != (rt_tweet == nullptr))
    return fail(FailureReason::invalid_field, "retweeted_user_id/retweeted_tweet_id must appear together");
  if (rt_user) {
    auto ru = read_id(*rt_user);
    auto rtw = read_id(*rt_tweet);
    if (!ru || ru->empty() || !rtw || rtw->empty())
      return fail(FailureReason::invalid_field, "retweet linkage");
    rec.retweeted_user_id = std::move(*ru);
    rec.retweeted_tweet_id = std::move(*rtw);
  } else if (starts_with_rt(rec.text)) {
    rec.inferred_retweet = true;
    std::string_view rest = std::string_view(rec.text).substr(4);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t next = pos;
      if (!text::is_word(text::next_cp(rest, next))) break;
      pos = next;
    }
    auto name = text::to_lower(rest.substr(0, pos));
    if (!name.empty() && std::find(rec.mentions.begin(), rec.mentions.end(), name) != rec.mentions.end())
      rec.retweeted_screen_name = std::move(name);
  }
  return rec;
}

}  // namespace botlens::corpus
