// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/corpus/record.hpp"
#include "botlens/error.hpp"
#include "botlens/text.hpp"

namespace botlens::corpus {

enum class MatchField : unsigned { hashtags = 1, text = 2 };

/// Hashtag family used to carve the MacronLeaks sub-corpus.
inline const std::vector<std::string>& macronleaks_terms() {
  static const std::vector<std::string> terms = {"macronleaks", "macrongate", "sortonsmacron", "bayrougate",
                                                 "rejoignezmarine"};
  return terms;
}

/// The 23 election-stream keywords of the general corpus.
inline const std::vector<std::string>& election_keywords() {
  static const std::vector<std::string> terms = {
      "france2017",       "marine2017",       "aunomdupeuple",     "frenchelection",
      "frenchelections",  "macron",           "lepen",             "le pen",
      "marinelepen",      "frenchpresidentialelection",            "jechoisismarine",
      "jevotemarine",     "jevotemacron",     "jevote",            "presidentielle2017",
      "electionfracaise", "jamaismacron",     "macron2017",        "enmarche",
      "macronpresident",  "#france",          "@mlp_officiel",     "@emmanuelmacron"};
  return terms;
}

class CampaignFilter {
 public:
  /// Terms are lowercased and deduplicated; at least one is required, as is
  /// at least one field.
  CampaignFilter(std::vector<std::string> terms, unsigned fields = static_cast<unsigned>(MatchField::hashtags))
      : fields_(fields) {
    for (auto& t : terms) {
      auto lower = text::to_lower(t);
      if (!lower.empty()) terms_.push_back(std::move(lower));
    }
    std::sort(terms_.begin(), terms_.end());
    terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
    if (terms_.empty()) throw UsageError("campaign filter needs at least one term");
    if ((fields_ & 3u) == 0) throw UsageError("campaign filter needs at least one match field");
    for (const auto& t : terms_) {
      std::string_view tag = t;
      while (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
      if (!tag.empty()) tag_terms_.emplace_back(tag);
    }
    std::sort(tag_terms_.begin(), tag_terms_.end());
    tag_terms_.erase(std::unique(tag_terms_.begin(), tag_terms_.end()), tag_terms_.end());
  }

  const std::vector<std::string>& terms() const { return terms_; }
  bool on(MatchField f) const { return fields_ & static_cast<unsigned>(f); }
  unsigned fields() const { return fields_; }

  /// Hashtags match exactly on the normalized tag (a leading '#' on the term
  /// is ignored); text matches as a case-insensitive substring.
  bool matches(const TweetRecord& r) const {
    if (on(MatchField::hashtags)) {
      for (const auto& h : r.hashtags)
        if (std::binary_search(tag_terms_.begin(), tag_terms_.end(), h)) return true;
    }
    if (on(MatchField::text) && !r.text.empty()) {
      auto lower = text::to_lower(r.text);
      for (const auto& t : terms_)
        if (lower.find(t) != std::string::npos) return true;
    }
    return false;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::string> tag_terms_;
  unsigned fields_;
};

inline unsigned parse_match_fields(std::string_view spec) {
  unsigned fields = 0;
  size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    auto item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (item == "hashtags") fields |= static_cast<unsigned>(MatchField::hashtags);
    else if (item == "text") fields |= static_cast<unsigned>(MatchField::text);
    else if (!item.empty()) throw UsageError("unknown match field '" + std::string(item) + "'");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

inline std::vector<TweetRecord> filter_campaign(const std::vector<TweetRecord>& corpus, const CampaignFilter& f) {
  std::vector<TweetRecord> out;
  for (const auto& r : corpus)
    if (f.matches(r)) out.push_back(r);
  return out;
}

}  // namespace botlens::corpus
