#pragma once

#include <span>
#include <string>
#include <vector>

#include "keyvec/compose.hpp"
#include "keyvec/corpus.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/metrics.hpp"
#include "keyvec/phrase.hpp"
#include "keyvec/stats.hpp"

namespace keyvec {

struct ExtractionConfig {
  int k1 = 1;  // expansion breadth feeding the global statistics
  int k2 = 1;  // expansion breadth feeding local counts
  MetricKind metric;
  int top_n = 10;
  std::size_t crop_size = 20000;

  void validate() const;
};

/// Ranked (token, score) pairs, scores non-increasing, tokens distinct,
/// ties broken lexicographically.
using KeywordList = std::vector<std::pair<std::string, double>>;

/// Substitutes each phrase occurrence by the K nearest cropped-vocabulary
/// words of its composed vector. Phrases composing to the zero vector
/// contribute nothing.
WordMultiset expand_document(const EmbeddingModel& model,
                             const CroppedVocab& vocab,
                             std::span<const Phrase> phrases, int k);

/// Scores the distinct words of an expanded document with word_score and
/// keeps the top_n. Empty documents yield an empty list.
KeywordList extract_keywords(const WordMultiset& expanded,
                             const CorpusStats& stats, MetricKind metric,
                             int top_n);

/// Unit-normalized sum of the model vectors of the keyword tokens (summed
/// in lexicographic order); the zero vector for an empty list.
Vec document_vector(const EmbeddingModel& model, const KeywordList& keywords);

// ---- corpus-level pipeline ----

/// Tags a document and mines its candidate phrases.
std::vector<Phrase> mine_phrases(const Document& doc);

/// Expands every document of `docs` with breadth k; parallel across
/// documents, output order fixed by input order.
std::vector<WordMultiset> expand_docs(const EmbeddingModel& model,
                                      const CroppedVocab& vocab,
                                      std::span<const Document* const> docs,
                                      int k, int workers);

/// Statistics over a K1-expanded training split.
CorpusStats stats_from_expansion(std::span<const Document* const> docs,
                                 std::span<const WordMultiset> expansions);

struct DocKeywords {
  std::string id;
  std::string category;
  KeywordList keywords;
  Vec vector;
};

/// keywords + document vector for each expanded document.
std::vector<DocKeywords> keywords_for_docs(
    const EmbeddingModel& model, std::span<const Document* const> docs,
    std::span<const WordMultiset> expansions, const CorpusStats& stats,
    MetricKind metric, int top_n, int workers);

}  // namespace keyvec
