// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "botlens/botdetect/cv.hpp"
#include "botlens/botdetect/features.hpp"
#include "botlens/botdetect/io.hpp"
#include "botlens/botdetect/logreg.hpp"
#include "botlens/botdetect/metrics.hpp"
#include "botlens/botdetect/population.hpp"
#include "botlens/botdetect/scaler.hpp"
#include "botlens/corpus/user_table.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace botlens;
using namespace botlens::botdetect;
using Catch::Approx;

namespace {

corpus::UserSnapshot snapshot() {
  corpus::UserSnapshot s;
  s.user_id = "u1";
  return s;
}

std::vector<int> labels_of(const std::vector<LabeledExample>& ex) {
  std::vector<int> out;
  for (const auto& e : ex) out.push_back(e.label);
  return out;
}

}  // namespace

TEST_CASE("extract_features keeps the documented slot order", "[botdetect][features]") {
  auto zero = extract_features(snapshot());
  CHECK(zero.complete);
  for (double v : zero.values) CHECK(v == 0.0);

  auto s = snapshot();
  s.verified = true;
  CHECK(extract_features(s)[8] == 1.0);
  CHECK(kFeatureNames[Feature::verified] == "verified");

  // Vote__Marine as listed in the top-bots table
  auto vm = snapshot();
  vm.statuses_count = 737;
  vm.followers_count = 9;
  vm.friends_count = 61;
  vm.favourites_count = 85;
  vm.listed_count = 0;
  auto fv = extract_features(vm);
  CHECK(fv[Feature::statuses_count] == 737.0);
  CHECK(fv[Feature::followers_count] == 9.0);
  CHECK(fv[Feature::friends_count] == 61.0);
  CHECK(fv[Feature::favourites_count] == 85.0);
  CHECK(fv[Feature::listed_count] == 0.0);

  auto partial = snapshot();
  partial.present_counts = 0x1F & ~(1u << 2);
  CHECK_FALSE(extract_features(partial).complete);
}

TEST_CASE("fit_scaler on log1p counts", "[botdetect][scaler]") {
  std::vector<LabeledExample> ex(2);
  ex[0].features[Feature::followers_count] = 0.0;
  ex[1].features[Feature::followers_count] = std::numbers::e - 1.0;
  ex[1].label = 1;
  auto s = fit_scaler(ex);
  CHECK(s.mean[1] == Approx(0.5).epsilon(1e-15));
  CHECK(s.sd[1] == Approx(0.5).epsilon(1e-15));
  // statuses constant at 0
  CHECK(s.sd[0] == 1.0);
  CHECK(s.mean[0] == 0.0);

  CHECK_THROWS_AS(fit_scaler(std::span<const LabeledExample>(ex.data(), 1)), DataError);
}

TEST_CASE("scaling the training set gives zero-mean count features", "[botdetect][scaler]") {
  auto ex = synth::regimes(500, 0.3, 5);
  auto s = fit_scaler(ex);
  std::array<double, kCountFeatureCount> sums{};
  for (const auto& e : ex) {
    auto x = s.transform(e.features);
    for (std::size_t i = 0; i < kCountFeatureCount; ++i) sums[i] += x[i];
    for (std::size_t i = kCountFeatureCount; i < kFeatureCount; ++i) CHECK(x[i] == e.features[i]);
  }
  for (double v : sums) CHECK(std::fabs(v / 500.0) <= 1e-9);
}

TEST_CASE("analytic gradient matches central differences", "[botdetect][logreg]") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + rng.below(40);
    std::vector<std::array<double, 10>> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x[i]) v = rng.normal();
      y[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
    }
    std::array<double, 10> w{};
    for (auto& v : w) v = rng.normal();
    const double b = rng.normal();
    const double l2 = rng.uniform() * 0.1;

    auto lg = logistic_loss_gradient<10>(x, y, w, b, l2);
    // loss agrees with the textbook definition
    CHECK(lg.loss == Approx(oracle::naive_logistic_loss<10>(x, y, w, b, l2)).epsilon(1e-10));

    std::array<double, 11> theta{};
    std::copy(w.begin(), w.end(), theta.begin());
    theta[10] = b;
    auto f = [&](const std::array<double, 11>& t) {
      std::array<double, 10> ww{};
      std::copy(t.begin(), t.begin() + 10, ww.begin());
      return oracle::naive_logistic_loss<10>(x, y, ww, t[10], l2);
    };
    auto fd = oracle::central_difference<11>(f, theta, 1e-5);
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
      diff2 += (lg.grad_w[k] - fd[k]) * (lg.grad_w[k] - fd[k]);
      norm2 += lg.grad_w[k] * lg.grad_w[k];
    }
    diff2 += (lg.grad_b - fd[10]) * (lg.grad_b - fd[10]);
    norm2 += lg.grad_b * lg.grad_b;
    CHECK(std::sqrt(diff2) / std::max(std::sqrt(norm2), 1e-12) <= 1e-5);
  }
}

TEST_CASE("train_logreg separates one-feature data perfectly", "[botdetect][logreg]") {
  std::vector<LabeledExample> ex;
  for (int i = 0; i < 40; ++i) {
    LabeledExample e;
    e.label = i % 2;
    e.features[Feature::default_profile] = e.label;
    ex.push_back(e);
  }
  auto m = train_logreg(ex);
  std::vector<int> pred, truth;
  for (const auto& e : ex) {
    pred.push_back(m.classify(e.features) == UserClass::bot ? 1 : 0);
    truth.push_back(e.label);
  }
  CHECK(accuracy(pred, truth) == 1.0);
  CHECK(m.weights[Feature::default_profile] > 0.0);
  CHECK(m.manifest.n_examples == 40);
  CHECK(m.manifest.n_bots == 20);
  CHECK(m.manifest.iterations > 0);
}

TEST_CASE("flipping labels negates the learned weights", "[botdetect][logreg]") {
  auto ex = synth::regimes(600, 0.4, 17);
  auto flipped = ex;
  for (auto& e : flipped) e.label = 1 - e.label;
  auto m1 = train_logreg(ex);
  auto m2 = train_logreg(flipped);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) norm2 += (m1.weights[k] + m2.weights[k]) * (m1.weights[k] + m2.weights[k]);
  CHECK(std::sqrt(norm2) <= 1e-3);
}

TEST_CASE("train_logreg rejects single-class and bad input", "[botdetect][logreg]") {
  std::vector<LabeledExample> ex(5);
  CHECK_THROWS_AS(train_logreg(ex), DataError);
  ex[0].label = 2;
  CHECK_THROWS_AS(train_logreg(ex), DataError);
}

TEST_CASE("training is deterministic", "[botdetect][logreg]") {
  auto ex = synth::regimes(400, 0.25, 3);
  Hyperparameters hp;
  hp.seed = 9;
  auto a = train_logreg(ex, hp);
  auto b = train_logreg(ex, hp);
  CHECK(a == b);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("predict_proba and the >= threshold convention", "[botdetect][logreg]") {
  Model m;
  FeatureVector fv;
  fv[Feature::favourites_count] = 1234;
  CHECK(m.predict_proba(fv) == 0.5);
  CHECK(m.classify(fv) == UserClass::bot);
}

TEST_CASE("probability is nonincreasing in favourites when its weight is negative", "[botdetect][logreg]") {
  auto ex = synth::regimes(800, 0.3, 21);
  auto m = train_logreg(ex);
  REQUIRE(m.weights[Feature::favourites_count] < 0.0);
  FeatureVector fv = ex[0].features;
  double prev = 1.0;
  for (double fav = 0; fav <= 1e6; fav = fav * 1.7 + 1) {
    fv[Feature::favourites_count] = fav;
    double p = m.predict_proba(fv);
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("stratified_folds balance classes", "[botdetect][cv]") {
  std::vector<int> labels(20, 0);
  std::fill(labels.begin(), labels.begin() + 10, 1);
  auto folds = stratified_folds(labels, 10, 1);
  REQUIRE(folds.size() == 10);
  for (const auto& f : folds) {
    REQUIRE(f.size() == 2);
    CHECK(labels[f[0]] + labels[f[1]] == 1);
  }

  std::vector<int> skewed(100, 1);
  std::fill(skewed.begin() + 95, skewed.end(), 0);
  auto f5 = stratified_folds(skewed, 5, 42);
  std::vector<char> seen(100, 0);
  for (const auto& f : f5) {
    int humans = 0;
    for (auto i : f) {
      humans += skewed[i] == 0;
      CHECK_FALSE(seen[i]);
      seen[i] = 1;
    }
    CHECK(humans == 1);
    CHECK(f.size() == 20);
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }));

  CHECK(stratified_folds(skewed, 5, 42) == f5);
  CHECK(stratified_folds(skewed, 5, 43) != f5);
  CHECK_THROWS_AS(stratified_folds(skewed, 6, 1), DataError);
  CHECK_THROWS_AS(stratified_folds(skewed, 1, 1), DataError);
}

TEST_CASE("stratified fold class counts stay within one of proportion", "[botdetect][cv]") {
  Rng rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t k = 2 + rng.below(9);
    const std::size_t n1 = k + rng.below(200), n0 = k + rng.below(200);
    std::vector<int> labels(n1, 1);
    labels.insert(labels.end(), n0, 0);
    rng.shuffle(labels);
    auto folds = stratified_folds(labels, k, rep);
    std::size_t total = 0;
    for (const auto& f : folds) {
      double c1 = 0;
      for (auto i : f) c1 += labels[i];
      const double c0 = static_cast<double>(f.size()) - c1;
      CHECK(std::fabs(c1 - static_cast<double>(n1) / k) <= 1.0);
      CHECK(std::fabs(c0 - static_cast<double>(n0) / k) <= 1.0);
      total += f.size();
    }
    CHECK(total == labels.size());
  }
}

TEST_CASE("cross_validate on separable and permuted data", "[botdetect][cv]") {
  auto ex = synth::separable(1000, 0.3, 77);
  auto rep = cross_validate(ex, 10, 5);
  REQUIRE(rep.folds.size() == 10);
  CHECK(rep.mean_accuracy >= 0.99);
  CHECK(rep.mean_auc >= 0.99);
  double acc = 0;
  for (const auto& f : rep.folds) {
    CHECK(f.accuracy >= 0.0);
    CHECK(f.accuracy <= 1.0);
    acc += f.accuracy;
  }
  CHECK(rep.mean_accuracy == Approx(acc / 10).epsilon(1e-15));

  auto permuted = synth::separable(2000, 0.5, 78);
  auto labels = labels_of(permuted);
  Rng rng(79);
  rng.shuffle(labels);
  for (std::size_t i = 0; i < permuted.size(); ++i) permuted[i].label = labels[i];
  auto null_rep = cross_validate(permuted, 10, 5);
  CHECK(null_rep.mean_auc >= 0.4);
  CHECK(null_rep.mean_auc <= 0.6);

  CHECK(cross_validate(ex, 10, 5) == rep);
}

TEST_CASE("accuracy and AUC basics", "[botdetect][metrics]") {
  std::vector<int> labels{1, 0, 1, 0, 1};
  std::vector<double> exact{1, 0, 1, 0, 1};
  std::vector<int> pred{1, 0, 1, 0, 1};
  CHECK(auc_roc(exact, labels) == 1.0);
  CHECK(accuracy(pred, labels) == 1.0);
  std::vector<double> flat(5, 0.3);
  CHECK(auc_roc(flat, labels) == 0.5);
  std::vector<int> one_class(5, 1);
  CHECK_THROWS_AS(auc_roc(flat, one_class), DataError);
  CHECK_THROWS_AS(accuracy(pred, std::vector<int>{1}), DataError);
}

TEST_CASE("AUC equals the pairwise oracle and ignores monotone transforms", "[botdetect][metrics]") {
  Rng rng(200);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.below(499);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = std::floor(rng.uniform() * 20) / 4.0;  // plenty of ties
      labels[i] = rng.bernoulli(0.4) ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    const double auc = auc_roc(scores, labels);
    CHECK(std::fabs(auc - oracle::pairwise_auc(scores, labels)) <= 1e-12);
    auto moved = scores;
    for (auto& s : moved) s = std::exp(3.0 * s) - 7.0;
    CHECK(auc_roc(moved, labels) == auc);
  }
}

TEST_CASE("classify_population partitions every user", "[botdetect][population]") {
  Model m;
  corpus::UserTable empty;
  auto none = classify_population(m, empty);
  CHECK(none.entries.empty());
  CHECK_FALSE(none.summary.bot_fraction.has_value());

  auto train = synth::regimes(4000, 0.18, 100);
  auto model = train_logreg(train);

  Rng rng(101);
  corpus::UserTable users;
  const int n = 5000, planted = 900;  // 18%
  for (int i = 0; i < n; ++i) {
    const bool bot = i < planted;
    auto fv = synth::draw(bot ? synth::kBotRegime : synth::kHumanRegime, rng);
    corpus::TweetRecord r;
    r.tweet_id = "t" + std::to_string(i);
    r.created_at = from_epoch(1493856000 + i);
    r.user.user_id = "u" + std::to_string(i);
    r.user.observed_at = r.created_at;
    for (std::size_t k = 0; k < kCountFeatureCount; ++k)
      r.user.*corpus::kCountFields[k].slot = static_cast<std::uint64_t>(fv[k]);
    for (std::size_t k = 0; k < kCountFeatureCount; ++k)
      r.user.*corpus::kBoolFields[k].slot = fv[kCountFeatureCount + k] == 1.0;
    if (i % 97 == 0) r.user.present_counts = 0x0F;
    users.add(r);
  }
  users.finalize();
  auto pop = classify_population(model, users);
  REQUIRE(pop.summary.bot_fraction.has_value());
  CHECK(std::fabs(*pop.summary.bot_fraction - 0.18) <= 0.03);
  CHECK(pop.summary.users == static_cast<std::uint64_t>(n));
  CHECK(pop.summary.bots + pop.summary.humans == pop.summary.users);
  CHECK(pop.summary.incomplete == 52);

  auto part = pop.partition();
  CHECK(part.size() == static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < pop.entries.size(); ++i) CHECK(pop.entries[i - 1].user_id < pop.entries[i].user_id);
}

TEST_CASE("verified-are-human post rule", "[botdetect][population]") {
  Model m;  // p = 0.5 for everyone, so everyone is a bot
  corpus::UserTable users;
  for (int i = 0; i < 4; ++i) {
    corpus::TweetRecord r;
    r.tweet_id = std::to_string(i);
    r.user.user_id = "u" + std::to_string(i);
    r.user.verified = i < 2;
    users.add(r);
  }
  auto plain = classify_population(m, users);
  CHECK(plain.summary.bots == 4);
  auto ruled = classify_population(m, users, {.verified_are_human = true});
  CHECK(ruled.summary.bots == 2);
  CHECK(ruled.summary.verified_overrides == 2);
}

TEST_CASE("count scaling barely changes held-out decisions", "[botdetect][logreg]") {
  auto all = synth::regimes(4000, 0.3, 55);
  std::vector<LabeledExample> train(all.begin(), all.begin() + 2000), test(all.begin() + 2000, all.end());
  auto scale = [](std::vector<LabeledExample> v, double c) {
    for (auto& e : v)
      for (std::size_t k = 0; k < kCountFeatureCount; ++k) e.features[k] *= c;
    return v;
  };
  auto m1 = train_logreg(train);
  auto m2 = train_logreg(scale(train, 10.0));
  auto scaled_test = scale(test, 10.0);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < test.size(); ++i)
    changed += m1.classify(test[i].features) != m2.classify(scaled_test[i].features);
  CHECK(static_cast<double>(changed) / static_cast<double>(test.size()) <= 0.01);
}

TEST_CASE("model JSON round trip and training CSV parsing", "[botdetect][io]") {
  auto ex = synth::regimes(300, 0.3, 4);
  auto m = train_logreg(ex, {.seed = 12});
  m.manifest.cv = cross_validate(ex, 5, 12);
  auto back = model_from_json(nlohmann::json::parse(to_json(m).dump()));
  CHECK(back == m);

  std::stringstream csv;
  csv << kTrainingHeader << "\n";
  for (const auto& e : ex) csv << training_csv_row(e) << "\n";
  auto parsed = parse_training_csv(csv);
  REQUIRE(parsed.size() == ex.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    CHECK(parsed[i].label == ex[i].label);
    CHECK(parsed[i].features == ex[i].features);
  }
  CHECK(training_data_hash(parsed) == training_data_hash(ex));

  std::stringstream bad_header("label,foo\n1,2\n");
  CHECK_THROWS_AS(parse_training_csv(bad_header), DataError);
  std::stringstream bad_label(std::string(kTrainingHeader) + "\n2,1,1,1,1,1,0,0,0,0,0\n");
  CHECK_THROWS_AS(parse_training_csv(bad_label), DataError);
  std::stringstream bad_bool(std::string(kTrainingHeader) + "\n1,1,1,1,1,1,0,0,3,0,0\n");
  CHECK_THROWS_AS(parse_training_csv(bad_bool), DataError);
}
