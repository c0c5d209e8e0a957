// SPDX-License-Identifier: Apache-2.0
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "error.hpp"

namespace spinmem {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty())
    fail(ErrorCode::invalid_argument, "quantile of empty sample");
  if (p < 0.0 || p > 1.0)
    fail(ErrorCode::invalid_argument, "quantile probability out of [0,1]");
  if (sorted.size() == 1) return sorted[0];
  const double h = p * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> midranks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j + 1);  // 1-based
    for (size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorCode::invalid_argument, "spearman needs two equal-length samples");
  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// Tail P(rank sum of the second sample >= observed) over all equally likely
// assignments of the pooled midranks, counted by dynamic programming on the
// doubled (integer) ranks.
double exact_tail(const std::vector<double>& pooled_ranks, size_t n_second,
                  double observed_rank_sum) {
  const size_t n = pooled_ranks.size();
  std::vector<int> scaled(n);
  int max_sum = 0;
  for (size_t i = 0; i < n; ++i) {
    scaled[i] = static_cast<int>(std::llround(2.0 * pooled_ranks[i]));
    max_sum += scaled[i];
  }
  const int target = static_cast<int>(std::llround(2.0 * observed_rank_sum));
  // counts[k][s] = number of k-subsets with doubled-rank sum s
  std::vector<std::vector<double>> counts(
      n_second + 1, std::vector<double>(static_cast<size_t>(max_sum) + 1, 0.0));
  counts[0][0] = 1.0;
  for (size_t i = 0; i < n; ++i) {
    const size_t kmax = std::min(n_second, i + 1);
    for (size_t k = kmax; k >= 1; --k)
      for (int s = max_sum - scaled[i]; s >= 0; --s)
        if (counts[k - 1][s] > 0.0) counts[k][s + scaled[i]] += counts[k - 1][s];
  }
  double tail = 0.0, total = 0.0;
  for (int s = 0; s <= max_sum; ++s) {
    total += counts[n_second][s];
    if (s >= target) tail += counts[n_second][s];
  }
  return tail / total;
}

}  // namespace

UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           MwuAlternative alternative, MwuMethod method) {
  if (a.empty() || b.empty())
    fail(ErrorCode::invalid_argument, "both samples must be non-empty");
  const size_t na = a.size();
  const size_t nb = b.size();
  const size_t n = na + nb;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  double rank_sum_b = 0.0;
  for (size_t i = na; i < n; ++i) rank_sum_b += ranks[i];
  const double u_b =
      rank_sum_b - static_cast<double>(nb) * (static_cast<double>(nb) + 1.0) / 2.0;

  UTestResult result;
  result.u_statistic = u_b;
  result.alternative = alternative;
  result.n_first = na;
  result.n_second = nb;

  const auto [mn, mx] = std::minmax_element(pooled.begin(), pooled.end());
  result.degenerate = (*mn == *mx);

  const bool use_exact = method == MwuMethod::exact ||
                         (method == MwuMethod::automatic && n <= 20);
  if (use_exact) {
    result.exact = true;
    result.p_value = exact_tail(ranks, nb, rank_sum_b);
    return result;
  }

  // Normal approximation with tie correction and continuity correction.
  double tie_sum = 0.0;
  {
    std::vector<double> sorted(pooled);
    std::sort(sorted.begin(), sorted.end());
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j < n && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_sum += t * t * t - t;
      i = j;
    }
  }
  const double dn = static_cast<double>(n);
  const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  const double variance =
      static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
      ((dn + 1.0) - tie_sum / (dn * (dn - 1.0)));
  if (variance <= 0.0) {
    result.degenerate = true;
    result.p_value = 1.0;
    return result;
  }
  const double z = (u_b - mu - 0.5) / std::sqrt(variance);
  result.p_value = std::clamp(normal_sf(z), 0.0, 1.0);
  return result;
}

}  // namespace spinmem
