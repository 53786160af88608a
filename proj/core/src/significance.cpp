#include "keyvec/significance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace keyvec {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> differences(std::span<const std::pair<double, double>> pairs) {
  std::vector<double> d;
  d.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    if (x != y) d.push_back(x - y);
  }
  return d;
}

/// Exact binomial tail P(X >= m) for X ~ Binomial(n, 1/2).
double binomial_tail(std::size_t m, std::size_t n) {
  if (m > n) return 0.0;
  if (n <= 62) {
    // binomial coefficients are integer-exact in long double up to here
    long double coeff = 1.0L;
    for (std::size_t i = 0; i < m; ++i) {
      coeff = coeff * (long double)(n - i) / (long double)(i + 1);
    }
    long double sum = 0.0L;
    for (std::size_t k = m; k <= n; ++k) {
      sum += coeff;
      coeff = coeff * (long double)(n - k) / (long double)(k + 1);
    }
    return double(sum / std::pow(2.0L, (long double)n));
  }
  double sum = 0.0;
  const double log2n = double(n) * std::log(2.0);
  for (std::size_t k = m; k <= n; ++k) {
    double logc = std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
                  std::lgamma(double(n - k) + 1);
    sum += std::exp(logc - log2n);
  }
  return std::min(sum, 1.0);
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs) {
  std::vector<double> d = differences(pairs);
  if (d.empty()) {
    throw std::invalid_argument("wilcoxon_signed_rank: all differences are zero");
  }
  if (d.size() < 5) {
    throw std::invalid_argument(
        "wilcoxon_signed_rank: needs at least 5 nonzero differences");
  }

  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(d[a]) < std::abs(d[b]);
  });

  std::vector<double> rank(n, 0.0);
  double tie_correction = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && std::abs(d[order[j]]) == std::abs(d[order[i]])) ++j;
    double avg_rank = (double(i + 1) + double(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) rank[order[k]] = avg_rank;
    double t = double(j - i);
    tie_correction += (t * t * t - t) / 48.0;
    i = j;
  }

  double w_plus = 0.0, w_minus = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    (d[k] > 0 ? w_plus : w_minus) += rank[k];
  }

  WilcoxonResult r;
  r.n = n;
  r.t_statistic = std::min(w_plus, w_minus);
  const double nn = double(n);
  double mean = nn * (nn + 1.0) / 4.0;
  double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction;
  r.z = (r.t_statistic - mean) / std::sqrt(var);
  r.p_two_sided = std::min(1.0, 2.0 * normal_cdf(r.z));
  return r;
}

SignTestResult sign_test(std::span<const std::pair<double, double>> pairs) {
  std::size_t pos = 0, neg = 0;
  for (const auto& [x, y] : pairs) {
    if (x > y) ++pos;
    else if (x < y) ++neg;
  }
  if (pos + neg == 0) {
    throw std::invalid_argument("sign_test: all pairs are ties");
  }
  SignTestResult r;
  r.n = pos + neg;
  r.m_statistic = (double(pos) - double(neg)) / 2.0;
  r.p_one_sided = binomial_tail(std::max(pos, neg), r.n);
  return r;
}

double bonferroni_threshold(double alpha, std::size_t comparisons) {
  if (comparisons == 0) throw std::invalid_argument("bonferroni: no comparisons");
  return alpha / double(comparisons);
}

bool bonferroni_significant(double p, double alpha, std::size_t comparisons) {
  return p < bonferroni_threshold(alpha, comparisons);
}

}  // namespace keyvec
