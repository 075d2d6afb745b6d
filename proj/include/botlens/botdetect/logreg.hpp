// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "botlens/botdetect/features.hpp"
#include "botlens/botdetect/metrics.hpp"
#include "botlens/botdetect/scaler.hpp"
#include "botlens/digest.hpp"
#include "botlens/error.hpp"
#include "botlens/partition.hpp"

namespace botlens::botdetect {

struct Hyperparameters {
  double l2 = 1e-4;
  int max_iters = 5000;
  double tol = 1e-8;
  std::uint64_t seed = 0;

  bool operator==(const Hyperparameters&) const = default;
};

struct TrainManifest {
  std::string data_hash;
  std::uint64_t seed = 0;
  Hyperparameters hyper;
  std::size_t n_examples = 0;
  std::size_t n_bots = 0;
  int iterations = 0;
  double final_loss = 0.0;
  std::optional<CVReport> cv;

  bool operator==(const TrainManifest&) const = default;
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

template <std::size_t D>
struct LossGradient {
  double loss = 0.0;
  std::array<double, D> grad_w{};
  double grad_b = 0.0;
};

/// Mean logistic loss + l2 * |w|^2 / 2 and its analytic gradient. The bias
/// is not penalized.
template <std::size_t D>
LossGradient<D> logistic_loss_gradient(std::span<const std::array<double, D>> x, std::span<const double> y,
                                       const std::array<double, D>& w, double b, double l2) {
  LossGradient<D> out;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = b;
    for (std::size_t k = 0; k < D; ++k) z += w[k] * x[i][k];
    out.loss += softplus(z) - y[i] * z;
    const double r = sigmoid(z) - y[i];
    for (std::size_t k = 0; k < D; ++k) out.grad_w[k] += r * x[i][k];
    out.grad_b += r;
  }
  double norm2 = 0.0;
  for (std::size_t k = 0; k < D; ++k) {
    out.grad_w[k] = out.grad_w[k] / n + l2 * w[k];
    norm2 += w[k] * w[k];
  }
  out.grad_b /= n;
  out.loss = out.loss / n + 0.5 * l2 * norm2;
  return out;
}

struct Model {
  Scaler scaler;
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  double threshold = 0.5;
  TrainManifest manifest;

  double predict_proba(const FeatureVector& fv) const {
    const auto x = scaler.transform(fv);
    double z = bias;
    for (std::size_t k = 0; k < kFeatureCount; ++k) z += weights[k] * x[k];
    return sigmoid(z);
  }

  /// bot iff probability >= threshold
  UserClass classify(const FeatureVector& fv) const {
    return predict_proba(fv) >= threshold ? UserClass::bot : UserClass::human;
  }

  bool operator==(const Model&) const = default;
};

/// SHA-256 over a canonical text rendering of the examples (label and the
/// ten features at full precision, one example per line, in input order).
inline std::string training_data_hash(std::span<const LabeledExample> examples) {
  Sha256 h;
  char buf[64];
  for (const auto& e : examples) {
    std::snprintf(buf, sizeof buf, "%d", e.label);
    h.update(buf);
    for (double v : e.features.values) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      h.update(buf);
    }
    h.update("\n");
  }
  return h.hex();
}

/// Full-batch gradient descent with Armijo backtracking from w = 0, b = 0.
/// Stops when an accepted step lowers the loss by less than `tol`, or after
/// `max_iters` steps.
inline Model train_logreg(std::span<const LabeledExample> examples, const Hyperparameters& hyper = {}) {
  std::size_t bots = 0;
  for (const auto& e : examples) {
    if (e.label != 0 && e.label != 1) throw DataError("labels must be 0 or 1");
    bots += e.label == 1;
  }
  if (bots == 0 || bots == examples.size()) throw DataError("training data contains a single class");
  if (!(hyper.l2 >= 0.0) || hyper.max_iters < 1 || !(hyper.tol >= 0.0))
    throw UsageError("invalid hyperparameters");

  Model model;
  model.scaler = fit_scaler(examples);
  std::vector<ScaledVector> x;
  std::vector<double> y;
  x.reserve(examples.size());
  y.reserve(examples.size());
  for (const auto& e : examples) {
    x.push_back(model.scaler.transform(e.features));
    y.push_back(static_cast<double>(e.label));
  }

  using LG = LossGradient<kFeatureCount>;
  std::array<double, kFeatureCount> w{};
  double b = 0.0;
  LG cur = logistic_loss_gradient<kFeatureCount>(x, y, w, b, hyper.l2);
  if (!std::isfinite(cur.loss)) throw NumericError("non-finite training loss at initialization");

  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  double step = 1.0;
  int iter = 0;
  for (; iter < hyper.max_iters; ++iter) {
    double gnorm2 = cur.grad_b * cur.grad_b;
    for (double g : cur.grad_w) gnorm2 += g * g;
    if (gnorm2 == 0.0) break;

    double eta = step;
    std::array<double, kFeatureCount> w_next{};
    double b_next = 0.0;
    LG next;
    bool accepted = false;
    while (eta >= kMinStep) {
      for (std::size_t k = 0; k < kFeatureCount; ++k) w_next[k] = w[k] - eta * cur.grad_w[k];
      b_next = b - eta * cur.grad_b;
      next = logistic_loss_gradient<kFeatureCount>(x, y, w_next, b_next, hyper.l2);
      if (std::isfinite(next.loss) && next.loss <= cur.loss - kArmijo * eta * gnorm2) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      if (!std::isfinite(next.loss)) throw NumericError("non-finite training loss");
      break;
    }
    const double decrease = cur.loss - next.loss;
    w = w_next;
    b = b_next;
    cur = next;
    step = eta * 2.0;
    if (decrease < hyper.tol) {
      ++iter;
      break;
    }
  }
  for (double v : w)
    if (!std::isfinite(v)) throw NumericError("non-finite weights after training");

  model.weights = w;
  model.bias = b;
  model.manifest.data_hash = training_data_hash(examples);
  model.manifest.seed = hyper.seed;
  model.manifest.hyper = hyper;
  model.manifest.n_examples = examples.size();
  model.manifest.n_bots = bots;
  model.manifest.iterations = iter;
  model.manifest.final_loss = cur.loss;
  return model;
}

}  // namespace botlens::botdetect
