#include "keyvec/extract.hpp"

#include <algorithm>
#include <stdexcept>

#include "keyvec/parallel.hpp"

namespace keyvec {

void ExtractionConfig::validate() const {
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("K must be >= 1");
  if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
  if (crop_size == 0) throw std::invalid_argument("crop_size must be >= 1");
}

WordMultiset expand_document(const EmbeddingModel& model,
                             const CroppedVocab& vocab,
                             std::span<const Phrase> phrases, int k) {
  if (k < 1) throw std::invalid_argument("expand_document: K must be >= 1");
  WordMultiset words;
  for (const Phrase& phrase : phrases) {
    CompositionResult composed = compose(model, phrase);
    if (norm(composed.vector) == 0.0) continue;
    for (auto& [token, sim] :
         nearest_words(model, vocab, composed.vector, std::size_t(k))) {
      (void)sim;
      ++words[token];
    }
  }
  return words;
}

KeywordList extract_keywords(const WordMultiset& expanded,
                             const CorpusStats& stats, MetricKind metric,
                             int top_n) {
  if (top_n < 1) throw std::invalid_argument("extract_keywords: top_n must be >= 1");
  KeywordList scored;
  scored.reserve(expanded.size());
  for (const auto& [word, count] : expanded) {
    scored.emplace_back(word, word_score(word, count, metric, stats));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > std::size_t(top_n)) scored.resize(std::size_t(top_n));
  return scored;
}

Vec document_vector(const EmbeddingModel& model, const KeywordList& keywords) {
  Vec sum(model.dim(), 0.0f);
  std::vector<std::string> tokens;
  tokens.reserve(keywords.size());
  for (const auto& [token, score] : keywords) {
    (void)score;
    tokens.push_back(token);
  }
  std::sort(tokens.begin(), tokens.end());
  std::vector<double> acc(model.dim(), 0.0);
  for (const std::string& token : tokens) {
    auto vec = model.vector_of(token);
    if (!vec) continue;  // keywords come from the vocabulary, but stay safe
    for (std::size_t i = 0; i < model.dim(); ++i) acc[i] += (*vec)[i];
  }
  for (std::size_t i = 0; i < model.dim(); ++i) sum[i] = float(acc[i]);
  normalize(sum);
  return sum;
}

std::vector<Phrase> mine_phrases(const Document& doc) {
  TagMode mode = doc.pretagged ? TagMode::pretagged : TagMode::heuristic;
  return extract_phrases(tag_text(doc.content, mode));
}

std::vector<WordMultiset> expand_docs(const EmbeddingModel& model,
                                      const CroppedVocab& vocab,
                                      std::span<const Document* const> docs,
                                      int k, int workers) {
  std::vector<WordMultiset> out(docs.size());
  parallel_for(docs.size(), workers, [&](std::size_t i) {
    out[i] = expand_document(model, vocab, mine_phrases(*docs[i]), k);
  });
  return out;
}

CorpusStats stats_from_expansion(std::span<const Document* const> docs,
                                 std::span<const WordMultiset> expansions) {
  std::vector<ExpandedDoc> expanded;
  expanded.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    expanded.push_back({expansions[i], docs[i]->category});
  }
  return CorpusStats::build(expanded);
}

std::vector<DocKeywords> keywords_for_docs(
    const EmbeddingModel& model, std::span<const Document* const> docs,
    std::span<const WordMultiset> expansions, const CorpusStats& stats,
    MetricKind metric, int top_n, int workers) {
  std::vector<DocKeywords> out(docs.size());
  parallel_for(docs.size(), workers, [&](std::size_t i) {
    DocKeywords dk;
    dk.id = docs[i]->id;
    dk.category = docs[i]->category;
    dk.keywords = extract_keywords(expansions[i], stats, metric, top_n);
    dk.vector = document_vector(model, dk.keywords);
    out[i] = std::move(dk);
  });
  return out;
}

}  // namespace keyvec
