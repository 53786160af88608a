// Synthetic fixture shared by the unit and acceptance suites: four planted
// topic vocabularies of 15 words each in a 2-D embedding (cluster
// directions 90 degrees apart, within-cluster jitter +-5 degrees, so
// inter-cluster cosine stays below 0.3), with 10 pretagged train and 5
// test documents per category.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "keyvec/classify.hpp"
#include "keyvec/corpus.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/extract.hpp"

namespace fixture {

inline constexpr int kCategories = 4;
inline constexpr int kWordsPerTopic = 15;
inline constexpr int kTrainPerCategory = 10;
inline constexpr int kTestPerCategory = 5;
inline constexpr int kWordsPerDoc = 8;

struct TopicFixture {
  keyvec::EmbeddingModel model;
  keyvec::FrequencyList freq;
  keyvec::CroppedVocab vocab;
  keyvec::LabeledCorpus corpus;
};

TopicFixture make_topic_fixture();

/// Materializes the same fixture on disk for CLI runs:
///   dir/corpus/{train,test}/<category>/docNN.tagged
///   dir/model.txt   (text embedding format)
///   dir/freq.tsv    (token<TAB>count)
void write_topic_fixture(const std::filesystem::path& dir);

struct PipelineRun {
  keyvec::CorpusStats stats;
  std::vector<keyvec::DocKeywords> train;
  std::vector<keyvec::DocKeywords> test;
  keyvec::EvalResult result;
};

/// Full train-split statistics + keyword extraction + one-vs-all training
/// + test-split evaluation on the fixture.
PipelineRun run_pipeline(const TopicFixture& fx, keyvec::MetricKind metric,
                         int k, int top_n, double reg = 1.0,
                         std::uint64_t seed = 0, int workers = 1);

}  // namespace fixture
