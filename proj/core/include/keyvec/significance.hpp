#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace keyvec {

struct WilcoxonResult {
  double t_statistic = 0;  // smaller signed-rank sum
  double z = 0;            // normal approximation with tie correction
  double p_two_sided = 0;
  std::size_t n = 0;  // nonzero differences
};

/// Wilcoxon signed-rank test on paired samples. Differences x-y equal to
/// zero are dropped; tied magnitudes receive average ranks. Requires at
/// least 5 nonzero differences.
WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs);

struct SignTestResult {
  double m_statistic = 0;  // (positives - negatives) / 2
  double p_one_sided = 0;  // exact binomial tail
  std::size_t n = 0;       // non-ties
};

/// One-tailed sign test; ties are dropped, p is the exact binomial tail
/// P(X >= max(pos, neg)) under X ~ Binomial(n, 1/2).
SignTestResult sign_test(std::span<const std::pair<double, double>> pairs);

double bonferroni_threshold(double alpha, std::size_t comparisons);
bool bonferroni_significant(double p, double alpha, std::size_t comparisons);

}  // namespace keyvec
