// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "botlens/error.hpp"

namespace botlens::botdetect {

/// Fraction of predictions equal to their labels.
inline double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) throw DataError("accuracy: length mismatch");
  if (labels.empty()) throw DataError("accuracy of empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predictions[i] == labels[i];
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

/// Area under the ROC curve as the rank statistic
/// P(score+ > score-) + 0.5 P(score+ == score-), computed in O(n log n) by
/// walking tie groups in ascending score order.
inline double auc_roc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("auc_roc: length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double n_pos = 0.0, n_neg = 0.0, wins = 0.0;
  double neg_below = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    double pos_here = 0.0, neg_here = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? pos_here : neg_here) += 1.0;
      ++j;
    }
    wins += pos_here * neg_below + 0.5 * pos_here * neg_here;
    neg_below += neg_here;
    n_pos += pos_here;
    n_neg += neg_here;
    i = j;
  }
  if (n_pos == 0.0 || n_neg == 0.0) throw DataError("auc_roc is undefined with a single class");
  return wins / (n_pos * n_neg);
}

struct FoldMetrics {
  double accuracy = 0.0;
  double auc = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;

  bool operator==(const FoldMetrics&) const = default;
};

struct CVReport {
  std::vector<FoldMetrics> folds;
  double mean_accuracy = 0.0;
  double mean_auc = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const CVReport&) const = default;
};

}  // namespace botlens::botdetect
