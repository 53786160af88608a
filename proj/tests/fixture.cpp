#include "fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "keyvec/snapshot.hpp"

namespace fixture {

namespace {

const char* kCategoryNames[kCategories] = {"alpha", "beta", "delta", "gamma"};

std::string topic_word(int category, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%02d", kCategoryNames[category], index);
  return buf;
}

std::vector<std::pair<std::string, keyvec::Vec>> model_rows() {
  constexpr double pi = 3.14159265358979323846;
  std::vector<std::pair<std::string, keyvec::Vec>> rows;
  for (int c = 0; c < kCategories; ++c) {
    double base = c * (pi / 2.0);  // 0, 90, 180, 270 degrees
    for (int w = 0; w < kWordsPerTopic; ++w) {
      // jitter spread over +-5 degrees inside the cluster
      double jitter = (w - kWordsPerTopic / 2) * (5.0 * pi / 180.0) /
                      double(kWordsPerTopic / 2);
      double angle = base + jitter;
      rows.push_back({topic_word(c, w),
                      {float(std::cos(angle)), float(std::sin(angle))}});
    }
  }
  return rows;
}

std::vector<int> doc_word_indices(bool train, int doc) {
  std::vector<int> idx;
  int offset = train ? 0 : 1;
  for (int j = 0; j < kWordsPerDoc; ++j) {
    idx.push_back((doc * 3 + j + offset) % kWordsPerTopic);
  }
  return idx;
}

std::string doc_text(int category, bool train, int doc) {
  std::string text;
  for (int w : doc_word_indices(train, doc)) {
    if (!text.empty()) text += ' ';
    text += topic_word(category, w) + "_NN";
  }
  text += '\n';
  return text;
}

}  // namespace

TopicFixture make_topic_fixture() {
  TopicFixture fx;
  fx.model = keyvec::EmbeddingModel::from_rows(model_rows());
  int count = 500;
  for (const std::string& token : fx.model.tokens()) {
    fx.freq[token] = std::uint64_t(count--);
  }
  fx.vocab = keyvec::crop(fx.model, fx.freq, 20000);

  for (int c = 0; c < kCategories; ++c) {
    for (keyvec::Split split : {keyvec::Split::train, keyvec::Split::test}) {
      bool train = split == keyvec::Split::train;
      int docs = train ? kTrainPerCategory : kTestPerCategory;
      for (int d = 0; d < docs; ++d) {
        keyvec::Document doc;
        doc.category = kCategoryNames[c];
        char name[32];
        // ids are unique across splits, so test numbering starts after train
        std::snprintf(name, sizeof name, "doc%02d.tagged",
                      train ? d : kTrainPerCategory + d);
        doc.id = doc.category + std::string("/") + name;
        doc.content = doc_text(c, train, d);
        doc.pretagged = true;
        doc.split = split;
        fx.corpus.docs.push_back(std::move(doc));
      }
    }
    fx.corpus.categories.push_back(kCategoryNames[c]);
  }
  std::sort(fx.corpus.docs.begin(), fx.corpus.docs.end(),
            [](const keyvec::Document& a, const keyvec::Document& b) {
              if (a.split != b.split) return a.split < b.split;
              return a.id < b.id;
            });
  std::sort(fx.corpus.categories.begin(), fx.corpus.categories.end());
  return fx;
}

void write_topic_fixture(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  TopicFixture fx = make_topic_fixture();
  fx.model.save_text((dir / "model.txt").string());

  std::ofstream freq(dir / "freq.tsv", std::ios::binary);
  for (const auto& [token, count] : fx.freq) {
    freq << token << '\t' << count << '\n';
  }
  freq.close();

  for (const keyvec::Document& doc : fx.corpus.docs) {
    fs::path path = dir / "corpus" / keyvec::split_name(doc.split) / doc.id;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << doc.content;
  }
}

PipelineRun run_pipeline(const TopicFixture& fx, keyvec::MetricKind metric,
                         int k, int top_n, double reg, std::uint64_t seed,
                         int workers) {
  PipelineRun run;
  auto train_docs = fx.corpus.split_docs(keyvec::Split::train);
  auto test_docs = fx.corpus.split_docs(keyvec::Split::test);

  auto train_expanded =
      keyvec::expand_docs(fx.model, fx.vocab, train_docs, k, workers);
  run.stats = keyvec::stats_from_expansion(train_docs, train_expanded);
  run.train = keyvec::keywords_for_docs(fx.model, train_docs, train_expanded,
                                        run.stats, metric, top_n, workers);

  std::vector<keyvec::Vec> vectors;
  std::vector<std::string> labels;
  for (const keyvec::DocKeywords& dk : run.train) {
    vectors.push_back(dk.vector);
    labels.push_back(dk.category);
  }
  keyvec::LinearModel model = keyvec::train(vectors, labels, reg, seed);

  auto test_expanded =
      keyvec::expand_docs(fx.model, fx.vocab, test_docs, k, workers);
  run.test = keyvec::keywords_for_docs(fx.model, test_docs, test_expanded,
                                       run.stats, metric, top_n, workers);

  std::vector<std::string> predictions, golds;
  for (const keyvec::DocKeywords& dk : run.test) {
    predictions.push_back(keyvec::predict(
        model, std::span<const float>(dk.vector.data(), dk.vector.size())));
    golds.push_back(dk.category);
  }
  run.result = keyvec::evaluate(predictions, golds);
  return run;
}

}  // namespace fixture
