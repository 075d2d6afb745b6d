// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "botlens/error.hpp"
#include "botlens/stats/descriptive.hpp"
#include "botlens/stats/special.hpp"

namespace botlens::stats {

enum class TestMethod { welch_t, pooled_t, mann_whitney_exact, mann_whitney_normal };

inline const char* to_string(TestMethod m) {
  switch (m) {
    case TestMethod::welch_t: return "welch_t";
    case TestMethod::pooled_t: return "pooled_t";
    case TestMethod::mann_whitney_exact: return "mann_whitney_exact";
    case TestMethod::mann_whitney_normal: return "mann_whitney_normal";
  }
  return "unknown";
}

/// Two-sided test outcome. `underflow` marks a p-value that fell below the
/// smallest representable double and is reported as 0.
struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::welch_t;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::optional<double> df;
  bool underflow = false;
};

enum class TVariant { welch, pooled };

namespace detail {

inline TestResult finish_t(double t, double df, TestMethod method, std::size_t n1, std::size_t n2) {
  if (!std::isfinite(t) || !std::isfinite(df) || !(df > 0.0))
    throw NumericError("t statistic undefined (both samples have zero variance)");
  TestResult r;
  r.statistic = t;
  r.df = df;
  r.method = method;
  r.n1 = n1;
  r.n2 = n2;
  r.p_value = student_t_two_sided(t, df);
  r.underflow = r.p_value == 0.0;
  return r;
}

}  // namespace detail

/// Unequal-variance two-sample t test with Welch-Satterthwaite df.
inline TestResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DataError("welch_t needs at least 2 values per sample");
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double v1 = sample_variance(a) / n1;
  const double v2 = sample_variance(b) / n2;
  const double se2 = v1 + v2;
  if (se2 == 0.0) throw NumericError("welch_t: both samples have zero variance");
  const double t = (mean(a) - mean(b)) / std::sqrt(se2);
  const double df = se2 * se2 / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  return detail::finish_t(t, df, TestMethod::welch_t, a.size(), b.size());
}

/// Equal-variance (pooled) two-sample t test.
inline TestResult pooled_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DataError("pooled_t needs at least 2 values per sample");
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double sp2 = ((n1 - 1.0) * sample_variance(a) + (n2 - 1.0) * sample_variance(b)) / (n1 + n2 - 2.0);
  if (sp2 == 0.0) throw NumericError("pooled_t: both samples have zero variance");
  const double t = (mean(a) - mean(b)) / std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
  return detail::finish_t(t, n1 + n2 - 2.0, TestMethod::pooled_t, a.size(), b.size());
}

inline TestResult t_test(std::span<const double> a, std::span<const double> b, TVariant v) {
  return v == TVariant::welch ? welch_t(a, b) : pooled_t(a, b);
}

/// Largest combined size for which the exact null distribution is used.
inline constexpr std::size_t kMannWhitneyExactMax = 20;

/// Number of arrangements giving each U in [0, n1*n2] when there are no ties.
inline std::vector<double> mann_whitney_null_counts(std::size_t n1, std::size_t n2) {
  // table[i][j] = counts for sizes (i, j); the largest observation belongs
  // to the first sample (adds j to U) or the second (adds nothing).
  std::vector<std::vector<std::vector<double>>> table(n1 + 1, std::vector<std::vector<double>>(n2 + 1));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      auto& cell = table[i][j];
      cell.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cell[0] = 1.0;
        continue;
      }
      const auto& from_first = table[i - 1][j];
      const auto& from_second = table[i][j - 1];
      for (std::size_t u = 0; u < from_first.size(); ++u) cell[u + j] += from_first[u];
      for (std::size_t u = 0; u < from_second.size(); ++u) cell[u] += from_second[u];
    }
  }
  return table[n1][n2];
}

/// Two-sided exact p for U, min(1, 2 * min(P(U' <= u), P(U' >= u))).
inline double mann_whitney_exact_p(double u, std::size_t n1, std::size_t n2) {
  auto counts = mann_whitney_null_counts(n1, n2);
  double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double le = 0.0, ge = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (static_cast<double>(k) <= u) le += counts[k];
    if (static_cast<double>(k) >= u) ge += counts[k];
  }
  return std::fmin(1.0, 2.0 * std::fmin(le, ge) / total);
}

/// Midranks (1-based) of the pooled sample; ties share their average rank.
/// `tie_term` receives sum over tie groups of (t^3 - t).
inline std::vector<double> midranks(std::span<const double> pooled, double* tie_term = nullptr) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> ranks(pooled.size());
  double ties = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    const double t = static_cast<double>(j - i + 1);
    ties += t * t * t - t;
    i = j + 1;
  }
  if (tie_term) *tie_term = ties;
  return ranks;
}

/// Mann-Whitney U of the first sample against the second. Exact
/// enumeration when n1 + n2 <= 20 without ties, otherwise the normal
/// approximation with tie and continuity corrections.
inline TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DataError("mann_whitney_u needs non-empty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double v : pooled)
    if (std::isnan(v)) throw DataError("mann_whitney_u: NaN in sample");
  double tie_term = 0.0;
  auto ranks = midranks(pooled, &tie_term);
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  double r1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r1 += ranks[i];

  TestResult res;
  res.statistic = r1 - n1 * (n1 + 1.0) / 2.0;
  res.n1 = a.size();
  res.n2 = b.size();
  if (pooled.size() <= kMannWhitneyExactMax && tie_term == 0.0) {
    res.method = TestMethod::mann_whitney_exact;
    res.p_value = mann_whitney_exact_p(res.statistic, a.size(), b.size());
    return res;
  }
  res.method = TestMethod::mann_whitney_normal;
  const double n = n1 + n2;
  const double mu = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) {
    res.p_value = 1.0;
    return res;
  }
  const double z = std::fmax(0.0, std::fabs(res.statistic - mu) - 0.5) / std::sqrt(var);
  res.p_value = std::fmin(1.0, normal_two_sided(z));
  res.underflow = res.p_value == 0.0;
  return res;
}

}  // namespace botlens::stats
