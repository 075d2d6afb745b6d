// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "botlens/botdetect/features.hpp"
#include "botlens/botdetect/logreg.hpp"
#include "botlens/botdetect/metrics.hpp"
#include "botlens/error.hpp"
#include "botlens/random.hpp"

namespace botlens::botdetect {

/// k disjoint, sorted index sets covering [0, labels.size()). Each class is
/// shuffled with the seed and dealt round-robin, the second class continuing
/// where the first stopped, so every fold holds floor or ceil of n_c / k
/// members of class c and fold sizes differ by at most one.
inline std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                              std::uint64_t seed) {
  if (k < 2) throw DataError("stratified_folds needs k >= 2");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DataError("labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
  }
  for (const auto& members : by_class)
    if (members.size() < k) throw DataError("each class needs at least k members for stratified folds");

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t offset = 0;
  for (int c : {1, 0}) {
    auto& members = by_class[c];
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i) folds[(offset + i) % k].push_back(members[i]);
    offset = (offset + members.size()) % k;
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

/// Anything trainable on labeled examples that yields a scorer with a
/// decision threshold.
template <typename T>
concept Trainer = requires(T t, std::span<const LabeledExample> ex, const FeatureVector& fv) {
  { t(ex).predict_proba(fv) } -> std::convertible_to<double>;
  { t(ex).threshold } -> std::convertible_to<double>;
};

/// Stratified k-fold evaluation. The trainer sees only the training split,
/// so any scaling it fits never touches the held-out fold.
template <Trainer Train>
CVReport cross_validate(std::span<const LabeledExample> examples, std::size_t k, std::uint64_t seed, Train&& train) {
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) labels.push_back(e.label);
  auto folds = stratified_folds(labels, k, seed);

  CVReport report;
  report.seed = seed;
  std::vector<char> held(examples.size());
  for (const auto& fold : folds) {
    std::fill(held.begin(), held.end(), 0);
    for (std::size_t i : fold) held[i] = 1;
    std::vector<LabeledExample> train_set;
    train_set.reserve(examples.size() - fold.size());
    for (std::size_t i = 0; i < examples.size(); ++i)
      if (!held[i]) train_set.push_back(examples[i]);

    auto model = train(std::span<const LabeledExample>(train_set));
    std::vector<double> scores;
    std::vector<int> predicted, truth;
    for (std::size_t i : fold) {
      const double p = model.predict_proba(examples[i].features);
      scores.push_back(p);
      predicted.push_back(p >= model.threshold ? 1 : 0);
      truth.push_back(examples[i].label);
    }
    report.folds.push_back({accuracy(predicted, truth), auc_roc(scores, truth), train_set.size(), fold.size()});
  }
  for (const auto& f : report.folds) {
    report.mean_accuracy += f.accuracy;
    report.mean_auc += f.auc;
  }
  report.mean_accuracy /= static_cast<double>(report.folds.size());
  report.mean_auc /= static_cast<double>(report.folds.size());
  return report;
}

/// Logistic-regression cross-validation.
inline CVReport cross_validate(std::span<const LabeledExample> examples, std::size_t k, std::uint64_t seed,
                               const Hyperparameters& hyper = {}) {
  return cross_validate(examples, k, seed,
                        [&](std::span<const LabeledExample> train) { return train_logreg(train, hyper); });
}

}  // namespace botlens::botdetect
