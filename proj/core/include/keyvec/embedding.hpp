#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace keyvec {

using Vec = std::vector<float>;
using FrequencyList = std::map<std::string, std::uint64_t>;

double dot(std::span<const float> a, std::span<const float> b);
double norm(std::span<const float> v);

/// Scales v to unit length in place; a zero vector is left as-is.
void normalize(Vec& v);

enum class ModelFormat { binary, text };

/// Token -> dense vector map over a fixed dimensionality D.
///
/// Every vector is L2-normalized once at load, so cosine similarity
/// reduces to a plain dot product everywhere downstream. The model is
/// immutable after construction and safe to share across threads.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  static EmbeddingModel load(const std::string& path, ModelFormat format);

  /// Builds a model from (token, vector) rows, applying the same
  /// validation and normalization as load(). Used by tests and fixtures.
  static EmbeddingModel from_rows(
      const std::vector<std::pair<std::string, Vec>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool contains(std::string_view token) const;
  std::optional<std::size_t> index_of(std::string_view token) const;
  std::span<const float> vector_at(std::size_t index) const;

  /// Exact-byte lookup; absent tokens yield nullopt, never a fallback.
  std::optional<std::span<const float>> vector_of(std::string_view token) const;

  void save_text(const std::string& path) const;
  void save_binary(const std::string& path) const;

 private:
  std::vector<std::string> tokens_;
  std::vector<float> data_;  // size() * dim_, row-major
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;

  void insert_row(const std::string& token, Vec vec);
};

/// Subset of model tokens retained for nearest-word queries: the
/// `target_size` members with the highest external frequency counts.
struct CroppedVocab {
  std::vector<std::size_t> members;  // model row indices, sorted by token
  std::size_t target_size = 20000;

  std::size_t size() const { return members.size(); }
};

/// Keeps the `size` tokens with highest frequency that also exist in the
/// model. Ties on equal counts keep the lexicographically smaller token.
CroppedVocab crop(const EmbeddingModel& model, const FrequencyList& freq,
                  std::size_t size);

/// Exact K-nearest-members scan by cosine similarity, descending, with
/// lexicographic tokens breaking ties. Returns min(K, |vocab|) pairs.
std::vector<std::pair<std::string, double>> nearest_words(
    const EmbeddingModel& model, const CroppedVocab& vocab,
    std::span<const float> query, std::size_t k);

}  // namespace keyvec
