#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keyvec/stats.hpp"

namespace keyvec {

enum class BaseMetric { rf, tds, ig, gr, chi2, idf, tf_dcf, thd };

/// A base metric optionally scaled by local (within-document) term
/// frequency. The tf-scaled idf is the classic tf-idf.
struct MetricKind {
  BaseMetric base = BaseMetric::rf;
  bool tf_scaled = false;

  bool operator==(const MetricKind&) const = default;
};

/// The CLI metric names, in canonical order:
/// rf, tf-rf, tds, tf-tds, ig, tf-ig, gr, chi2, tf-chi2, idf, tf-idf,
/// tf-dcf, tf-tf-dcf, thd, tf-thd.
const std::vector<std::string>& metric_names();
std::optional<MetricKind> parse_metric(std::string_view name);
std::string metric_name(MetricKind kind);
bool is_chi2_family(MetricKind kind);

// Pure formula layer over raw contingency cells. All logarithms base 2.
double rf_value(const AbcdStats& t);    // log2(2 + a/max(c,1))
double tds_value(const AbcdStats& t);   // (a/(a+b)) / ((a+c)/n); 0 if a+c=0
double ig_value(const AbcdStats& t);    // four-cell mutual information
double gr_value(const AbcdStats& t);    // ig / H(category split); 0 if H=0
double chi2_value(const AbcdStats& t);  // n(ad-bc)^2 / margins; 0 on zero margin
double idf_value(const AbcdStats& t);   // log2(n/(a+c)); 0 if a+c=0

/// Eq-style tf-dcf: tf in the category divided by the product over the
/// other categories of (1 + log2(1 + tf_d)).
double tf_dcf_value(long long tf_in_category,
                    std::span<const long long> tf_other_categories);

/// Normalized-rank difference r_c/|Vc| - r_g/|Vg|.
double thd_value(long long rank_cat, long long vocab_cat, long long rank_global,
                 long long vocab_global);

/// Value of a base metric for (word, category) from corpus statistics.
double metric_value(BaseMetric base, const std::string& word,
                    const std::string& category, const CorpusStats& stats);

/// Per-document word relevancy: the maximum of metric_value over all
/// categories (idf is category-independent), multiplied by the local term
/// frequency for tf-scaled kinds.
double word_score(const std::string& word, int doc_tf, MetricKind kind,
                  const CorpusStats& stats);

}  // namespace keyvec
