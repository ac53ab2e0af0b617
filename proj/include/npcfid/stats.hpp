// Copyright 2026 The npcfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "npcfid/error.hpp"

namespace npcfid {

/// 1-based ascending ranks; tied values share the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Empty when either input is constant.
inline std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthMismatch("spearman_rho: inputs differ in length");
  if (a.size() < 2) throw LengthMismatch("spearman_rho: need at least two observations");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return pearson(ra, rb);
}

struct AccuracyResult {
  std::vector<std::pair<double, double>> pairs;  // (estimated, actual)
  double aad = 0.0;
  /// Coefficient of determination against the actual values; empty when the
  /// actual values have zero variance.
  std::optional<double> r2;
};

inline AccuracyResult aad_r2(std::vector<std::pair<double, double>> pairs) {
  if (pairs.size() < 2) throw LengthMismatch("aad_r2: need at least two pairs");
  AccuracyResult out;
  double mean_actual = 0.0;
  for (const auto& [est, act] : pairs) {
    out.aad += std::abs(est - act);
    mean_actual += act;
  }
  const double n = static_cast<double>(pairs.size());
  out.aad /= n;
  mean_actual /= n;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [est, act] : pairs) {
    ss_res += (act - est) * (act - est);
    ss_tot += (act - mean_actual) * (act - mean_actual);
  }
  if (ss_tot > 0.0) out.r2 = 1.0 - ss_res / ss_tot;
  out.pairs = std::move(pairs);
  return out;
}

/// Least-squares fit y = slope x + intercept with its R^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw LengthMismatch("linear_fit: need two equal-length series");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

}  // namespace npcfid
