// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/corpus/record.hpp"
#include "botlens/corpus/user_table.hpp"
#include "botlens/error.hpp"
#include "botlens/partition.hpp"
#include "botlens/stats/correlation.hpp"
#include "botlens/stats/descriptive.hpp"
#include "botlens/stats/tests.hpp"

namespace botlens::analytics {

/// The five count features, then tweets posted within the analysed scope.
inline constexpr std::array<std::string_view, 6> kGroupFeatures = {
    "statuses_count", "followers_count", "friends_count", "favourites_count", "listed_count", "tweets_in_scope"};

inline constexpr std::size_t kCorrelationFeatures = 5;

struct GroupRow {
  std::string feature;
  std::size_t n_bot = 0;
  std::size_t n_human = 0;
  stats::MeanSd bot;
  stats::MeanSd human;
  std::optional<stats::TestResult> t_test;
  std::string t_error;  // why t_test is absent
  std::optional<stats::TestResult> mann_whitney;
  std::string mwu_error;
};

struct GroupComparison {
  stats::TVariant variant = stats::TVariant::welch;
  std::vector<GroupRow> rows;

  const GroupRow* find(std::string_view feature) const {
    for (const auto& r : rows)
      if (r.feature == feature) return &r;
    return nullptr;
  }
};

/// Feature columns per class, users in ascending id order so that floating
/// sums never depend on hash or shard order. Users outside the partition are
/// skipped.
struct ClassColumns {
  std::array<std::vector<double>, kGroupFeatures.size()> bot;
  std::array<std::vector<double>, kGroupFeatures.size()> human;
};

inline ClassColumns class_columns(const corpus::UserTable& users, const Partition& partition) {
  ClassColumns cols;
  for (const auto& id : users.sorted_ids()) {
    auto it = partition.find(id);
    if (it == partition.end()) continue;
    const auto& e = *users.find(id);
    auto& target = it->second == UserClass::bot ? cols.bot : cols.human;
    for (std::size_t k = 0; k < kCorrelationFeatures; ++k)
      target[k].push_back(static_cast<double>(e.last.*corpus::kCountFields[k].slot));
    target[5].push_back(static_cast<double>(e.tweet_count));
  }
  return cols;
}

/// Bot vs human comparison per feature on last-snapshot counts. A test
/// that cannot be computed for one feature (too few users, zero variance in
/// both groups) is recorded on that row rather than aborting the rest.
inline GroupComparison compare_groups(const corpus::UserTable& users, const Partition& partition,
                                      stats::TVariant variant = stats::TVariant::welch) {
  auto cols = class_columns(users, partition);
  if (cols.bot[0].empty()) throw DataError("compare_groups: no bots among the analysed users");
  if (cols.human[0].empty()) throw DataError("compare_groups: no humans among the analysed users");
  GroupComparison out;
  out.variant = variant;
  for (std::size_t k = 0; k < kGroupFeatures.size(); ++k) {
    GroupRow row;
    row.feature = std::string(kGroupFeatures[k]);
    const auto& b = cols.bot[k];
    const auto& h = cols.human[k];
    row.n_bot = b.size();
    row.n_human = h.size();
    row.bot = stats::mean_sd(b);
    row.human = stats::mean_sd(h);
    try {
      row.t_test = stats::t_test(b, h, variant);
    } catch (const Error& e) {
      row.t_error = e.what();
    }
    try {
      row.mann_whitney = stats::mann_whitney_u(b, h);
    } catch (const Error& e) {
      row.mwu_error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// 5x5 Pearson matrix over the count features for one class. Binary
/// features are left out.
inline stats::CorrelationMatrix feature_correlations(const corpus::UserTable& users, const Partition& partition,
                                                     UserClass cls) {
  auto cols = class_columns(users, partition);
  auto& mine = cls == UserClass::bot ? cols.bot : cols.human;
  if (mine[0].size() < 2)
    throw DataError(std::string("feature_correlations: fewer than 2 ") + group_label(cls));
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;
  for (std::size_t k = 0; k < kCorrelationFeatures; ++k) {
    labels.emplace_back(kGroupFeatures[k]);
    columns.push_back(std::move(mine[k]));
  }
  return stats::correlation_matrix(std::move(labels), columns);
}

}  // namespace botlens::analytics
