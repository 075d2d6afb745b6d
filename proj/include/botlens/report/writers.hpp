// SPDX-License-Identifier: Apache-2.0
// Serializers for analytic products. Tables and plot data are CSV, test
// results JSON. Every writer is a pure function of its input.
#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "botlens/analytics/deltas.hpp"
#include "botlens/analytics/dormancy.hpp"
#include "botlens/analytics/groups.hpp"
#include "botlens/analytics/ranks.hpp"
#include "botlens/analytics/timeline.hpp"
#include "botlens/botdetect/population.hpp"
#include "botlens/csv.hpp"
#include "json.hpp"

namespace botlens::report {

using Json = nlohmann::ordered_json;

inline std::string rank_csv(const stats::RankFrequency& rows) {
  std::ostringstream out;
  out << "rank,entity,count\n";
  for (const auto& r : rows.rows) out << r.rank << ',' << csv::escape(r.entity) << ',' << r.count << '\n';
  return out.str();
}

inline std::string timeline_csv(const analytics::Timeline& tl) {
  std::ostringstream out;
  out << "bin_start_epoch,bin_start_utc";
  for (const auto& s : tl.series) out << ',' << s.label;
  out << '\n';
  for (std::size_t i = 0; i < tl.bins; ++i) {
    const auto start = tl.first_bin_start + static_cast<std::int64_t>(i) * tl.bin_seconds;
    out << start << ',' << format_utc(from_epoch(start));
    for (const auto& s : tl.series) out << ',' << s.counts[i];
    out << '\n';
  }
  return out.str();
}

/// Rank-frequency rows with their log-log coordinates.
inline std::string distribution_csv(const analytics::Distribution& d) {
  std::ostringstream out;
  out << "rank,entity,count,log10_rank,log10_count\n";
  for (const auto& r : d.ranks.rows) {
    out << r.rank << ',' << csv::escape(r.entity) << ',' << r.count << ','
        << csv::num(std::log10(static_cast<double>(r.rank))) << ',';
    if (r.count > 0) out << csv::num(std::log10(static_cast<double>(r.count)));
    out << '\n';
  }
  return out.str();
}

/// "frequency value -> number of entities" with log-log coordinates.
inline std::string histogram_csv(const analytics::Distribution& d) {
  std::ostringstream out;
  out << "value,entities,log10_value,log10_entities\n";
  for (const auto& [value, n] : d.histogram) {
    out << value << ',' << n << ',';
    if (value > 0) out << csv::num(std::log10(static_cast<double>(value)));
    out << ',' << csv::num(std::log10(static_cast<double>(n))) << '\n';
  }
  return out.str();
}

inline Json to_json(const stats::TestResult& r) {
  Json j;
  j["method"] = stats::to_string(r.method);
  j["statistic"] = r.statistic;
  if (r.df) j["df"] = *r.df;
  j["p_value"] = r.p_value;
  j["p_underflow"] = r.underflow;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  return j;
}

inline Json to_json(const analytics::GroupComparison& g) {
  Json j;
  j["t_variant"] = g.variant == stats::TVariant::welch ? "welch" : "pooled";
  j["sd_convention"] = "population";
  auto rows = Json::array();
  for (const auto& r : g.rows) {
    Json row;
    row["feature"] = r.feature;
    row["bots"] = {{"n", r.n_bot}, {"mean", r.bot.mean}, {"sd", r.bot.sd}};
    row["humans"] = {{"n", r.n_human}, {"mean", r.human.mean}, {"sd", r.human.sd}};
    if (r.t_test) row["t_test"] = to_json(*r.t_test);
    else row["t_test"] = {{"error", r.t_error}};
    if (r.mann_whitney) row["mann_whitney"] = to_json(*r.mann_whitney);
    else row["mann_whitney"] = {{"error", r.mwu_error}};
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

/// Undefined coefficients (constant columns) are written as null.
inline Json to_json(const stats::CorrelationMatrix& m) {
  Json j;
  j["n"] = m.n;
  j["labels"] = m.labels;
  auto rho = Json::array();
  for (const auto& row : m.rho) {
    auto r = Json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? Json(v) : Json(nullptr));
    rho.push_back(std::move(r));
  }
  j["rho"] = std::move(rho);
  auto degenerate = Json::array();
  for (std::size_t i = 0; i < m.degenerate.size(); ++i)
    if (m.degenerate[i]) degenerate.push_back(m.labels[i]);
  j["constant_columns"] = std::move(degenerate);
  return j;
}

inline std::string deltas_csv(const std::vector<analytics::FollowerDelta>& rows) {
  std::ostringstream out;
  out << "rank,user_id,screen_name,followers_before,followers_after,follower_delta,tweets_in_scope,"
         "retweets_received_from_humans\n";
  std::size_t rank = 0;
  for (const auto& d : rows) {
    const auto delta = static_cast<std::int64_t>(d.followers_after) - static_cast<std::int64_t>(d.followers_before);
    out << ++rank << ',' << csv::escape(d.user_id) << ',' << csv::escape(d.screen_name) << ',' << d.followers_before
        << ',' << d.followers_after << ',' << delta << ',' << d.tweets_in_scope << ','
        << d.retweets_received_from_humans << '\n';
  }
  return out.str();
}

inline std::string window_string(const TimeWindow& w) { return format_utc(w.begin) + "/" + format_utc(w.end); }

inline Json to_json(const analytics::DormancyReport& r, const analytics::DormancyOptions& o, const std::string& source) {
  Json j;
  j["source"] = source;
  j["window_a"] = window_string(o.window_a);
  j["window_b"] = window_string(o.window_b);
  j["gap"] = format_utc(o.window_a.end) + "/" + format_utc(o.window_b.begin);
  j["min_a"] = o.min_a;
  j["min_b"] = o.min_b;
  j["max_gap"] = o.max_gap;
  j["users_examined"] = r.users_examined;
  auto flagged = Json::array();
  for (const auto& f : r.flagged)
    flagged.push_back({{"user_id", f.user_id},
                       {"active_in_a", f.active_in_a},
                       {"active_in_gap", f.active_in_gap},
                       {"active_in_b", f.active_in_b}});
  j["flagged"] = std::move(flagged);
  auto gap = Json::array();
  for (const auto& c : r.creation_gap)
    gap.push_back({{"user_id", c.user_id},
                   {"account_created", format_utc(c.account_created)},
                   {"first_tweet", format_utc(c.first_tweet)}});
  j["creation_gap_candidates"] = std::move(gap);
  return j;
}

inline Json to_json(const botdetect::PopulationSummary& s) {
  Json j;
  j["users"] = s.users;
  j["bots"] = s.bots;
  j["humans"] = s.humans;
  j["bot_fraction"] = s.bot_fraction ? Json(*s.bot_fraction) : Json(nullptr);
  j["incomplete"] = s.incomplete;
  j["incomplete_bots"] = s.incomplete_bots;
  j["verified_overrides"] = s.verified_overrides;
  return j;
}

}  // namespace botlens::report
