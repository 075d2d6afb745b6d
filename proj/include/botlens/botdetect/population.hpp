// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "botlens/botdetect/features.hpp"
#include "botlens/botdetect/logreg.hpp"
#include "botlens/corpus/user_table.hpp"
#include "botlens/partition.hpp"

namespace botlens::botdetect {

struct PopulationEntry {
  std::string user_id;
  double probability = 0.0;
  UserClass label = UserClass::human;
  bool complete = true;
};

struct PopulationSummary {
  std::uint64_t users = 0;
  std::uint64_t bots = 0;
  std::uint64_t humans = 0;
  std::uint64_t incomplete = 0;
  std::uint64_t incomplete_bots = 0;
  std::uint64_t verified_overrides = 0;
  /// Absent for an empty population.
  std::optional<double> bot_fraction;
};

struct Population {
  std::vector<PopulationEntry> entries;  // sorted by user_id
  PopulationSummary summary;

  Partition partition() const {
    Partition p;
    p.reserve(entries.size());
    for (const auto& e : entries) p.emplace(e.user_id, e.label);
    return p;
  }
};

struct ClassifyOptions {
  /// Force verified accounts to human after scoring.
  bool verified_are_human = false;
};

/// Scores every user on their last snapshot. Incomplete snapshots are scored
/// with absent counts as 0 and flagged.
inline Population classify_population(const Model& model, const corpus::UserTable& users,
                                      const ClassifyOptions& opts = {}) {
  Population pop;
  const auto ids = users.sorted_ids();
  pop.entries.reserve(ids.size());
  for (const auto& id : ids) {
    const auto& entry = *users.find(id);
    const auto fv = extract_features(entry.last);
    PopulationEntry e;
    e.user_id = id;
    e.probability = model.predict_proba(fv);
    e.label = e.probability >= model.threshold ? UserClass::bot : UserClass::human;
    if (opts.verified_are_human && entry.last.verified && e.label == UserClass::bot) {
      e.label = UserClass::human;
      ++pop.summary.verified_overrides;
    }
    e.complete = fv.complete;
    ++pop.summary.users;
    if (e.label == UserClass::bot) ++pop.summary.bots;
    else ++pop.summary.humans;
    if (!e.complete) {
      ++pop.summary.incomplete;
      if (e.label == UserClass::bot) ++pop.summary.incomplete_bots;
    }
    pop.entries.push_back(std::move(e));
  }
  if (pop.summary.users > 0)
    pop.summary.bot_fraction = static_cast<double>(pop.summary.bots) / static_cast<double>(pop.summary.users);
  return pop;
}

}  // namespace botlens::botdetect
