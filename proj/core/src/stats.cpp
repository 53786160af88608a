#include "keyvec/stats.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace keyvec {

CorpusStats CorpusStats::build(const std::vector<ExpandedDoc>& docs) {
  CorpusStats stats;
  std::set<std::string> cats;
  for (const ExpandedDoc& d : docs) cats.insert(d.category);
  if (cats.size() < 2) {
    throw std::invalid_argument(
        "build_statistics: discriminative statistics undefined for fewer than "
        "two categories");
  }
  stats.categories_.assign(cats.begin(), cats.end());
  const std::size_t n_cats = stats.categories_.size();
  stats.cat_doc_counts_.assign(n_cats, 0);
  stats.n_docs_ = (long long)docs.size();

  for (const ExpandedDoc& d : docs) {
    std::size_t ci = stats.category_index(d.category);
    ++stats.cat_doc_counts_[ci];
    for (const auto& [word, count] : d.words) {
      if (count <= 0) continue;
      WordEntry& e = stats.words_[word];
      if (e.df.empty()) {
        e.df.assign(n_cats, 0);
        e.tf.assign(n_cats, 0);
      }
      e.df[ci] += 1;  // presence, once per document
      e.tf[ci] += count;
    }
  }

  stats.compute_ranks();
  return stats;
}

void CorpusStats::compute_ranks() {
  vocabulary_.clear();
  vocabulary_.reserve(words_.size());
  for (const auto& [word, entry] : words_) {
    (void)entry;
    vocabulary_.push_back(word);
  }

  const std::size_t n_cats = categories_.size();
  vocab_size_cat_.assign(n_cats, 0);
  for (auto& [word, entry] : words_) {
    (void)word;
    entry.rank_cat.assign(n_cats, 0);
  }

  // Per scope: sort members ascending by frequency, lexicographic on ties,
  // and assign ranks 1..|V|.
  auto assign = [&](auto tf_of, auto rank_slot) {
    std::vector<std::pair<long long, const std::string*>> order;
    for (auto& [word, entry] : words_) {
      long long tf = tf_of(entry);
      if (tf > 0) order.emplace_back(tf, &word);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return *a.second < *b.second;
    });
    long long rank = 0;
    for (const auto& [tf, word] : order) {
      (void)tf;
      rank_slot(words_.at(*word), ++rank);
    }
    return (long long)order.size();
  };

  for (std::size_t ci = 0; ci < n_cats; ++ci) {
    vocab_size_cat_[ci] = assign(
        [ci](const WordEntry& e) { return e.tf[ci]; },
        [ci](WordEntry& e, long long r) { e.rank_cat[ci] = r; });
  }
  vocab_size_global_ = assign(
      [](const WordEntry& e) {
        return std::accumulate(e.tf.begin(), e.tf.end(), 0LL);
      },
      [](WordEntry& e, long long r) { e.rank_global = r; });
}

std::size_t CorpusStats::category_index(const std::string& category) const {
  auto it = std::lower_bound(categories_.begin(), categories_.end(), category);
  if (it == categories_.end() || *it != category) {
    throw std::invalid_argument("unknown category: " + category);
  }
  return std::size_t(it - categories_.begin());
}

long long CorpusStats::category_docs(const std::string& category) const {
  return cat_doc_counts_[category_index(category)];
}

const CorpusStats::WordEntry* CorpusStats::find(const std::string& word) const {
  auto it = words_.find(word);
  return it == words_.end() ? nullptr : &it->second;
}

long long CorpusStats::doc_freq(const std::string& word,
                                const std::string& category) const {
  std::size_t ci = category_index(category);
  const WordEntry* e = find(word);
  return e ? e->df[ci] : 0;
}

long long CorpusStats::cat_tf(const std::string& word,
                              const std::string& category) const {
  std::size_t ci = category_index(category);
  const WordEntry* e = find(word);
  return e ? e->tf[ci] : 0;
}

std::vector<long long> CorpusStats::cat_tf_all(const std::string& word) const {
  const WordEntry* e = find(word);
  if (e) return e->tf;
  return std::vector<long long>(categories_.size(), 0);
}

AbcdStats CorpusStats::abcd(const std::string& word,
                            const std::string& category) const {
  std::size_t ci = category_index(category);
  AbcdStats cells;
  const WordEntry* e = find(word);
  long long in_cat = e ? e->df[ci] : 0;
  long long total = 0;
  if (e) total = std::accumulate(e->df.begin(), e->df.end(), 0LL);
  cells.a = in_cat;
  cells.b = cat_doc_counts_[ci] - in_cat;
  cells.c = total - in_cat;
  cells.d = n_docs_ - cat_doc_counts_[ci] - cells.c;
  return cells;
}

long long CorpusStats::rank_cat(const std::string& word,
                                const std::string& category) const {
  std::size_t ci = category_index(category);
  const WordEntry* e = find(word);
  return e ? e->rank_cat[ci] : 0;
}

long long CorpusStats::rank_global(const std::string& word) const {
  const WordEntry* e = find(word);
  return e ? e->rank_global : 0;
}

long long CorpusStats::vocab_size_cat(const std::string& category) const {
  return vocab_size_cat_[category_index(category)];
}

double CorpusStats::normalized_rank_cat(const std::string& word,
                                        const std::string& category) const {
  long long v = vocab_size_cat(category);
  if (v == 0) return 0.0;
  return double(rank_cat(word, category)) / double(v);
}

double CorpusStats::normalized_rank_global(const std::string& word) const {
  if (vocab_size_global_ == 0) return 0.0;
  return double(rank_global(word)) / double(vocab_size_global_);
}

namespace {
constexpr int kSnapshotVersion = 1;
}

std::string CorpusStats::to_json_string() const {
  nlohmann::json j;
  j["version"] = kSnapshotVersion;
  j["kind"] = "corpus_stats";
  j["categories"] = categories_;
  j["category_docs"] = cat_doc_counts_;
  j["n_docs"] = n_docs_;
  nlohmann::json words = nlohmann::json::object();
  for (const auto& [word, entry] : words_) {
    words[word] = {{"df", entry.df}, {"tf", entry.tf}};
  }
  j["words"] = std::move(words);
  return j.dump();
}

CorpusStats CorpusStats::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("version") || j["version"].get<int>() != kSnapshotVersion ||
      j.value("kind", "") != "corpus_stats") {
    throw std::runtime_error("stats snapshot: unsupported format or version");
  }
  CorpusStats stats;
  stats.categories_ = j.at("categories").get<std::vector<std::string>>();
  stats.cat_doc_counts_ = j.at("category_docs").get<std::vector<long long>>();
  stats.n_docs_ = j.at("n_docs").get<long long>();
  for (const auto& [word, entry] : j.at("words").items()) {
    WordEntry e;
    e.df = entry.at("df").get<std::vector<long long>>();
    e.tf = entry.at("tf").get<std::vector<long long>>();
    if (e.df.size() != stats.categories_.size() ||
        e.tf.size() != stats.categories_.size()) {
      throw std::runtime_error("stats snapshot: malformed entry for " + word);
    }
    stats.words_.emplace(word, std::move(e));
  }
  stats.compute_ranks();
  return stats;
}

bool CorpusStats::operator==(const CorpusStats& other) const {
  if (categories_ != other.categories_ || n_docs_ != other.n_docs_ ||
      cat_doc_counts_ != other.cat_doc_counts_ ||
      words_.size() != other.words_.size()) {
    return false;
  }
  for (const auto& [word, entry] : words_) {
    const WordEntry* o = other.find(word);
    if (!o || o->df != entry.df || o->tf != entry.tf) return false;
  }
  return true;
}

}  // namespace keyvec
