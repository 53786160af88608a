#include <benchmark/benchmark.h>

#include <random>

#include "keyvec/classify.hpp"
#include "keyvec/compose.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/phrase.hpp"

namespace {

keyvec::EmbeddingModel make_model(std::size_t tokens, std::size_t dim) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<std::pair<std::string, keyvec::Vec>> rows;
  rows.reserve(tokens);
  for (std::size_t i = 0; i < tokens; ++i) {
    keyvec::Vec v(dim);
    for (float& x : v) x = float(coord(rng));
    v[0] += 1.0f;  // keep away from the zero vector
    rows.push_back({"tok" + std::to_string(i), std::move(v)});
  }
  return keyvec::EmbeddingModel::from_rows(rows);
}

void BM_NearestWords(benchmark::State& state) {
  const std::size_t vocab_size = std::size_t(state.range(0));
  keyvec::EmbeddingModel model = make_model(vocab_size, 300);
  keyvec::FrequencyList freq;
  for (const std::string& t : model.tokens()) freq[t] = 1 + freq.size();
  keyvec::CroppedVocab vocab = keyvec::crop(model, freq, vocab_size);
  keyvec::Vec query(model.vector_at(0).begin(), model.vector_at(0).end());
  for (auto _ : state) {
    auto hits = keyvec::nearest_words(model, vocab, query, 90);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(vocab_size));
}
BENCHMARK(BM_NearestWords)->Arg(1000)->Arg(20000);

void BM_Compose(benchmark::State& state) {
  keyvec::EmbeddingModel model = make_model(5000, 300);
  std::vector<std::string> phrase{"tok1", "tok2", "tok3", "tok4", "tok5"};
  for (auto _ : state) {
    auto result = keyvec::compose(model, phrase);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Compose);

void BM_ExtractPhrases(benchmark::State& state) {
  keyvec::Sentence sentence;
  const char* tags[4] = {"JJ", "NN", "IN", "VB"};
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    keyvec::TaggedToken t;
    t.surface = "w" + std::to_string(i);
    t.pos = tags[rng() % 4];
    t.cls = keyvec::tag_class(t.pos);
    sentence.push_back(std::move(t));
  }
  for (auto _ : state) {
    auto phrases = keyvec::extract_phrases(sentence);
    benchmark::DoNotOptimize(phrases);
  }
}
BENCHMARK(BM_ExtractPhrases);

void BM_TrainClassifier(benchmark::State& state) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<keyvec::Vec> vectors;
  std::vector<std::string> labels;
  for (int i = 0; i < 200; ++i) {
    keyvec::Vec v(300);
    for (float& x : v) x = float(coord(rng));
    v[std::size_t(i % 4)] += 2.0f;
    keyvec::normalize(v);
    vectors.push_back(std::move(v));
    labels.push_back("cat" + std::to_string(i % 4));
  }
  for (auto _ : state) {
    auto model = keyvec::train(vectors, labels, 1.0, 7);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_TrainClassifier);

}  // namespace

BENCHMARK_MAIN();
