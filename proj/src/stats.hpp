// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spinmem {

// Quantile by linear interpolation between order statistics. Input must be
// sorted ascending.
double quantile_sorted(std::span<const double> sorted, double p);

// Midranks (average rank over ties), 1-based.
std::vector<double> midranks(std::span<const double> values);

// Spearman rank correlation with midrank ties. NaN if either side has zero
// rank variance.
double spearman(std::span<const double> x, std::span<const double> y);

enum class MwuAlternative { greater };
enum class MwuMethod { automatic, exact, normal_approximation };

struct UTestResult {
  double u_statistic = 0.0;  // U of the second sample
  double p_value = 1.0;
  MwuAlternative alternative = MwuAlternative::greater;
  bool exact = false;       // method actually used
  bool degenerate = false;  // all values tied across both samples
  size_t n_first = 0;
  size_t n_second = 0;
};

// One-sided Mann-Whitney U test; "greater" asks whether the second sample
// stochastically dominates the first. Ties take midranks. The exact p-value
// is the permutation tail of the rank-sum distribution (used automatically
// for combined size <= 20); larger samples use the normal approximation with
// tie and continuity corrections.
UTestResult mann_whitney_u(std::span<const double> a,
                           std::span<const double> b,
                           MwuAlternative alternative = MwuAlternative::greater,
                           MwuMethod method = MwuMethod::automatic);

}  // namespace spinmem
