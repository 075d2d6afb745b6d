// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "botlens/corpus/user_table.hpp"
#include "botlens/csv.hpp"
#include "botlens/error.hpp"
#include "botlens/timeutil.hpp"

namespace botlens::analytics {

using ActivityTraces = std::unordered_map<std::string, std::vector<Timestamp>>;

struct DormancyOptions {
  TimeWindow window_a;
  TimeWindow window_b;
  std::uint64_t min_a = 5;
  std::uint64_t min_b = 5;
  std::uint64_t max_gap = 1;
};

struct DormancyFlag {
  std::string user_id;
  std::uint64_t active_in_a = 0;
  std::uint64_t active_in_gap = 0;
  std::uint64_t active_in_b = 0;

  bool operator==(const DormancyFlag&) const = default;
};

/// Account created inside window A whose first corpus tweet falls in window B.
struct CreationGapCandidate {
  std::string user_id;
  Timestamp account_created{};
  Timestamp first_tweet{};
};

struct DormancyReport {
  std::vector<DormancyFlag> flagged;  // ascending user id
  std::vector<CreationGapCandidate> creation_gap;
  std::uint64_t users_examined = 0;
};

/// Windows are half-open; the gap is [A.end, B.begin).
inline void check_windows(const DormancyOptions& o) {
  if (!o.window_a.valid()) throw UsageError("window A ends before it starts");
  if (!o.window_b.valid()) throw UsageError("window B ends before it starts");
  if (o.window_b.begin < o.window_a.end) throw UsageError("window A must end before window B starts");
}

inline DormancyFlag count_activity(const std::string& id, const std::vector<Timestamp>& events,
                                   const DormancyOptions& o) {
  DormancyFlag f;
  f.user_id = id;
  for (auto t : events) {
    if (o.window_a.contains(t)) ++f.active_in_a;
    else if (o.window_b.contains(t)) ++f.active_in_b;
    else if (t >= o.window_a.end && t < o.window_b.begin) ++f.active_in_gap;
  }
  return f;
}

inline bool is_dormant(const DormancyFlag& f, const DormancyOptions& o) {
  return f.active_in_a >= o.min_a && f.active_in_b >= o.min_b && f.active_in_gap <= o.max_gap;
}

/// Flags users active at least min_a times in A and min_b times in B with
/// at most max_gap events in between.
inline DormancyReport detect_dormant(const ActivityTraces& traces, const DormancyOptions& o) {
  check_windows(o);
  DormancyReport rep;
  for (const auto& [id, events] : traces) {
    ++rep.users_examined;
    auto f = count_activity(id, events, o);
    if (is_dormant(f, o)) rep.flagged.push_back(std::move(f));
  }
  std::sort(rep.flagged.begin(), rep.flagged.end(),
            [](const DormancyFlag& a, const DormancyFlag& b) { return a.user_id < b.user_id; });
  return rep;
}

inline ActivityTraces traces_from_users(const corpus::UserTable& users) {
  ActivityTraces t;
  t.reserve(users.size());
  for (const auto& [id, e] : users.entries()) t.emplace(id, e.tweet_timestamps);
  return t;
}

/// The weaker signal available when the corpus only covers window B.
inline std::vector<CreationGapCandidate> creation_gap_candidates(const corpus::UserTable& users,
                                                                 const DormancyOptions& o) {
  check_windows(o);
  std::vector<CreationGapCandidate> out;
  for (const auto& [id, e] : users.entries()) {
    const auto& created = e.last.created_at_account ? e.last.created_at_account : e.first.created_at_account;
    if (!created || !o.window_a.contains(*created)) continue;
    if (!o.window_b.contains(e.first.observed_at)) continue;
    out.push_back({id, *created, e.first.observed_at});
  }
  std::sort(out.begin(), out.end(),
            [](const CreationGapCandidate& a, const CreationGapCandidate& b) { return a.user_id < b.user_id; });
  return out;
}

/// `user_id,timestamp` lines; a `user_id,...` header line is optional.
inline ActivityTraces read_activity_traces(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read activity traces " + path.string());
  ActivityTraces t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto trimmed = csv::trim(line);
    if (trimmed.empty()) continue;
    auto f = csv::split(trimmed);
    if (line_no == 1 && !f.empty() && f[0] == "user_id") continue;
    if (f.size() < 2) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected user_id,timestamp");
    auto ts = parse_timestamp(csv::trim(f[1]));
    if (!ts) throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad timestamp");
    t[csv::trim(f[0])].push_back(*ts);
  }
  return t;
}

}  // namespace botlens::analytics
