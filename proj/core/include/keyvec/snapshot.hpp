#pragma once

#include <string>
#include <vector>

#include "keyvec/classify.hpp"
#include "keyvec/extract.hpp"
#include "keyvec/stats.hpp"

namespace keyvec {

/// Everything eval-time reuse needs besides the embedding model itself:
/// the extraction configuration, the cropped vocabulary (as tokens), the
/// training statistics and the fitted classifier.
struct TrainedModel {
  ExtractionConfig config;
  double reg = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocab_tokens;
  CorpusStats stats;
  LinearModel classifier;
};

void save_trained(const TrainedModel& model, const std::string& path);
TrainedModel load_trained(const std::string& path);

/// Rebuilds a cropped vocabulary against a freshly loaded model from the
/// snapshot's token list. Tokens missing from the model are an error.
CroppedVocab vocab_from_tokens(const EmbeddingModel& model,
                               const std::vector<std::string>& tokens);

std::vector<std::string> vocab_tokens(const EmbeddingModel& model,
                                      const CroppedVocab& vocab);

}  // namespace keyvec
