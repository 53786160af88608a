#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "keyvec/embedding.hpp"

namespace keyvec {

/// One-against-all linear classifier: one L2-regularized hinge-loss
/// separator per category, prediction by maximum decision value with
/// lexicographic tie-break.
struct LinearModel {
  std::vector<std::string> categories;       // sorted
  std::vector<std::vector<double>> weights;  // one per category
  std::vector<double> biases;
  double reg = 1.0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;

  double decision(std::size_t category_index, std::span<const float> v) const;
};

/// Deterministic subgradient training: fixed epoch count, shuffling driven
/// entirely by `seed`. Identical inputs and seed give identical weights.
LinearModel train(const std::vector<Vec>& vectors,
                  const std::vector<std::string>& labels, double reg = 1.0,
                  std::uint64_t seed = 0);

std::string predict(const LinearModel& model, std::span<const float> v);

struct CategoryCounts {
  long long tp = 0, fp = 0, fn = 0;
};

struct EvalResult {
  std::vector<std::string> categories;
  std::vector<CategoryCounts> counts;
  double micro_precision = 0, micro_recall = 0, micro_f1 = 0;
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
};

/// Micro/macro precision-recall-F1 from aggregated per-category counts.
EvalResult eval_from_counts(std::vector<std::string> categories,
                            std::vector<CategoryCounts> counts);

EvalResult evaluate(const std::vector<std::string>& predictions,
                    const std::vector<std::string>& golds);

/// Stratified k-fold cross-validation with deterministic fold assignment:
/// documents sorted by id within each category, then dealt round-robin
/// with a fold counter running across categories. Counts are aggregated
/// over folds before averaging.
EvalResult cross_validate(const std::vector<Vec>& vectors,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& ids, int folds,
                          double reg = 1.0, std::uint64_t seed = 0);

/// Fold index per document, exposed for tests.
std::vector<int> fold_assignment(const std::vector<std::string>& labels,
                                 const std::vector<std::string>& ids,
                                 int folds);

}  // namespace keyvec
