// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "botlens/error.hpp"

namespace botlens::stats {

struct PearsonResult {
  double rho = 0.0;
  /// Either column was constant; rho is reported as 0.
  bool degenerate = false;
};

/// Two-pass product-moment correlation, clamped to [-1, 1].
inline PearsonResult pearson_detail(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson: length mismatch");
  if (x.size() < 2) throw DataError("pearson needs at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

inline double pearson(std::span<const double> x, std::span<const double> y) { return pearson_detail(x, y).rho; }

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rho;
  /// Per column: constant within the sample.
  std::vector<bool> degenerate;
  std::size_t n = 0;
};

/// Exactly symmetric, unit diagonal.
inline CorrelationMatrix correlation_matrix(std::vector<std::string> labels,
                                            const std::vector<std::vector<double>>& columns) {
  if (labels.size() != columns.size()) throw DataError("correlation_matrix: label/column count mismatch");
  const std::size_t k = columns.size();
  CorrelationMatrix m;
  m.labels = std::move(labels);
  m.rho.assign(k, std::vector<double>(k, 0.0));
  m.degenerate.assign(k, false);
  m.n = k ? columns[0].size() : 0;
  for (std::size_t i = 0; i < k; ++i) {
    m.rho[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      auto r = pearson_detail(columns[i], columns[j]);
      m.rho[i][j] = m.rho[j][i] = r.rho;
    }
    // a column is degenerate when it is constant
    const auto& c = columns[i];
    if (c.size() < 2) throw DataError("correlation_matrix needs at least 2 rows");
    m.degenerate[i] = std::all_of(c.begin(), c.end(), [&](double v) { return v == c.front(); });
  }
  return m;
}

}  // namespace botlens::stats
