#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "keyvec/corpus.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/extract.hpp"
#include "keyvec/metrics.hpp"

namespace keyvec {

struct ParameterSetup {
  int k = 1;
  MetricKind metric;
  int keyword_count = 10;

  /// Stable sort key; zero-padded numbers so string order matches
  /// numeric order.
  std::string key() const;
  bool operator==(const ParameterSetup&) const = default;
};

struct SearchConfig {
  std::vector<ParameterSetup> setups;
  std::vector<int> doc_count_ladder{5, 10, 20, 100, 1000};
  std::vector<int> cv_ratios_first{2, 3, 5};  // first ladder step only
  int cv_ratio_rest = 5;
  double reg = 1.0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct SetupTrace {
  std::string key;
  double score = 0;
  bool survived = false;
};

struct StepTrace {
  int max_doc_count = 0;
  int cv_ratio = 0;
  double tolerance = 0;
  double best_score = 0;
  std::vector<SetupTrace> setups;
};

struct SearchResult {
  ParameterSetup chosen;
  std::vector<StepTrace> steps;
  bool early_return = false;  // a single survivor ended the ladder early
};

/// Escalating-budget selection: per ladder step, take up to max_doc_count
/// documents per category (lexicographic ids), score every surviving setup
/// by k-fold cross-validated micro-F1, and keep setups within
/// cv_ratio / (2 * max_doc_count * |categories|) of the best. Returns as
/// soon as one setup survives; after the full ladder the survivor with the
/// lexicographically smallest key wins.
SearchResult search(const EmbeddingModel& model, const CroppedVocab& vocab,
                    std::span<const Document* const> train_docs,
                    const SearchConfig& config);

/// Default candidate grid. The chi-squared family is excluded unless
/// `include_chi2` is set.
std::vector<ParameterSetup> make_setups(std::span<const int> ks,
                                        std::span<const std::string> metric_names,
                                        std::span<const int> keyword_counts,
                                        bool include_chi2 = false);

}  // namespace keyvec
