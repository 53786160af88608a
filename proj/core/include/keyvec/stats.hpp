#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace keyvec {

/// Expanded document content: token -> multiplicity.
using WordMultiset = std::map<std::string, int>;

struct ExpandedDoc {
  WordMultiset words;
  std::string category;
};

/// Four-cell contingency table of a (word, category) pair over documents:
///   a = docs in the category containing the word
///   b = docs in the category lacking the word
///   c = docs in other categories containing the word
///   d = docs in other categories lacking the word
struct AbcdStats {
  long long a = 0, b = 0, c = 0, d = 0;
  long long n() const { return a + b + c + d; }
};

/// Global frequency structures over an expanded training corpus: document
/// frequencies and term-frequency totals per (word, category), plus
/// ascending-frequency rank tables per category and corpus-wide.
///
/// Ranks run 1..|V| within each scope, rank 1 being the lowest frequency;
/// ties give the lexicographically smaller token the smaller rank. Words
/// absent from a scope have rank 0 there.
class CorpusStats {
 public:
  static CorpusStats build(const std::vector<ExpandedDoc>& docs);

  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t category_index(const std::string& category) const;

  long long n_docs() const { return n_docs_; }
  long long category_docs(const std::string& category) const;

  long long doc_freq(const std::string& word, const std::string& category) const;
  long long cat_tf(const std::string& word, const std::string& category) const;
  std::vector<long long> cat_tf_all(const std::string& word) const;

  AbcdStats abcd(const std::string& word, const std::string& category) const;

  long long rank_cat(const std::string& word, const std::string& category) const;
  long long rank_global(const std::string& word) const;
  long long vocab_size_cat(const std::string& category) const;
  long long vocab_size_global() const { return vocab_size_global_; }

  /// r/|V| with absent words pinned to 0.
  double normalized_rank_cat(const std::string& word,
                             const std::string& category) const;
  double normalized_rank_global(const std::string& word) const;

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

  /// Versioned JSON snapshot; ranks are derived data and recomputed on load.
  std::string to_json_string() const;
  static CorpusStats from_json_string(const std::string& text);

  bool operator==(const CorpusStats& other) const;

 private:
  struct WordEntry {
    std::vector<long long> df;        // per category
    std::vector<long long> tf;        // per category
    std::vector<long long> rank_cat;  // 0 = absent from that category
    long long rank_global = 0;
  };

  std::vector<std::string> categories_;
  std::vector<long long> cat_doc_counts_;
  long long n_docs_ = 0;
  std::map<std::string, WordEntry> words_;
  std::vector<std::string> vocabulary_;  // words_ keys, lexicographic
  std::vector<long long> vocab_size_cat_;
  long long vocab_size_global_ = 0;

  void compute_ranks();
  const WordEntry* find(const std::string& word) const;
};

}  // namespace keyvec
