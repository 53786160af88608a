// Acceptance suite: each numbered criterion runs standalone, prints one
// PASS/FAIL line with its runtime, and the process exit code is the number
// of failed criteria. argv[1] must point at the keyvec CLI binary.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "keyvec/classify.hpp"
#include "keyvec/compose.hpp"
#include "keyvec/corpus.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/extract.hpp"
#include "keyvec/metrics.hpp"
#include "keyvec/phrase.hpp"
#include "keyvec/significance.hpp"
#include "keyvec/tune.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Criterion {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << what << ": got " << got << ", want " << want << " +- " << tol;
      failures.push_back(msg.str());
    }
  }
};

std::string g_cli_path;
int g_failed = 0;

void run_criterion(int number, const std::string& name, double time_limit_s,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (time_limit_s > 0 && elapsed > time_limit_s) {
    std::ostringstream msg;
    msg << "runtime " << elapsed << "s exceeds the " << time_limit_s
        << "s limit";
    c.failures.push_back(msg.str());
  }
  bool ok = c.failures.empty();
  std::printf("[%s] %d. %s (%.2fs)\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), elapsed);
  if (!ok) {
    ++g_failed;
    for (const std::string& f : c.failures) {
      std::printf("       - %s\n", f.c_str());
    }
  }
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  fs::path out_file = fs::temp_directory_path() / "keyvec_cli_output.txt";
  std::string cmd = g_cli_path + " " + args + " >" + out_file.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    *output = buf.str();
  }
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1 ----

void criterion_fsm(Criterion& c) {
  // exhaustive class sequences
  const char alphabet3[3] = {'J', 'N', 'I'};
  int checked = 0;
  for (int len = 1; len <= 5; ++len) {
    int combos = 1;
    for (int i = 0; i < len; ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      std::string classes;
      int v = code;
      for (int i = 0; i < len; ++i) {
        classes.push_back(alphabet3[v % 3]);
        v /= 3;
      }
      if (keyvec::accepts_pattern(classes) != oracles::grammar_accepts(classes)) {
        c.expect(false, "automaton disagrees with grammar on \"" + classes + "\"");
      }
      ++checked;
    }
  }
  c.expect(checked == 363, "expected 363 sequences, saw " + std::to_string(checked));

  // random O-padded sentences against brute-force span enumeration
  std::mt19937_64 rng(20260808);
  const char alphabet4[4] = {'J', 'N', 'I', 'O'};
  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t len = 1 + rng() % 20;
    std::string classes;
    keyvec::Sentence sentence;
    for (std::size_t i = 0; i < len; ++i) {
      char cls = alphabet4[rng() % 4];
      classes.push_back(cls);
      keyvec::TaggedToken t;
      t.surface = "w" + std::to_string(i);
      t.pos = cls == 'J' ? "JJ" : cls == 'N' ? "NN" : cls == 'I' ? "IN" : "VB";
      t.cls = keyvec::tag_class(t.pos);
      sentence.push_back(std::move(t));
    }
    auto phrases = keyvec::extract_phrases(sentence);
    auto spans = oracles::enumerate_spans(classes);
    if (phrases.size() != spans.size()) {
      c.expect(false, "span count mismatch on \"" + classes + "\"");
      continue;
    }
    std::multiset<std::string> got, want;
    for (const keyvec::Phrase& p : phrases) got.insert(p.joined());
    for (auto [start, count] : spans) {
      std::string joined;
      for (std::size_t i = start; i < start + count; ++i) {
        if (!joined.empty()) joined += ' ';
        joined += sentence[i].surface;
      }
      want.insert(joined);
    }
    c.expect(got == want, "span content mismatch on \"" + classes + "\"");
  }
}

// ---- criterion 2 ----

void criterion_composer(Criterion& c) {
  std::mt19937_64 rng(31337);
  const char* pool[6] = {"u0", "u1", "u2", "u3", "u4", "u5"};
  int matched = 0;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::pair<std::string, keyvec::Vec>> rows;
    auto random_vec = [&] {
      keyvec::Vec v(3);
      for (float& x : v) x = float(double(rng() % 2000) / 1000.0 - 1.0 + 1e-3);
      return v;
    };
    for (const char* t : pool) {
      if (rng() % 2) rows.push_back({t, random_vec()});
    }
    for (int m = 0; m < 5; ++m) {
      std::string joined = pool[rng() % 6];
      int extra = 1 + int(rng() % 3);
      for (int e = 0; e < extra; ++e) joined += std::string("_") + pool[rng() % 6];
      rows.push_back({joined, random_vec()});
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const auto& a, const auto& b) {
                             return a.first == b.first;
                           }),
               rows.end());
    keyvec::EmbeddingModel model = keyvec::EmbeddingModel::from_rows(rows);

    std::vector<std::string> phrase;
    std::size_t len = 1 + rng() % 5;
    for (std::size_t i = 0; i < len; ++i) phrase.push_back(pool[rng() % 6]);

    auto got = keyvec::compose(model, phrase);
    auto want = oracles::enumerate_segmentations(model, phrase);
    if (!want) {
      c.expect(false, "oracle found no segmentation at iteration " +
                          std::to_string(iter));
      continue;
    }
    if (got.units != want->units) {
      c.expect(false, "unit count mismatch at iteration " + std::to_string(iter) +
                          ": got " + std::to_string(got.units) + ", want " +
                          std::to_string(want->units));
      continue;
    }
    bool vec_ok = true;
    for (std::size_t i = 0; i < got.vector.size(); ++i) {
      if (std::abs(double(got.vector[i]) - double(want->vector[i])) >= 1e-9) {
        vec_ok = false;
      }
    }
    c.expect(vec_ok, "vector mismatch at iteration " + std::to_string(iter));
    if (got.units == want->units && vec_ok) ++matched;
  }
  c.expect(matched == 500,
           "only " + std::to_string(matched) + "/500 phrases matched the oracle");
}

// ---- criterion 3 ----

void criterion_metrics(Criterion& c) {
  keyvec::AbcdStats t{3, 1, 1, 5};
  c.expect_near(keyvec::tds_value(t), 1.875, 1e-4, "tds");
  c.expect_near(keyvec::chi2_value(t), 3.40278, 1e-4, "chi2");
  c.expect_near(keyvec::idf_value(t), 1.32193, 1e-4, "idf");
  c.expect_near(keyvec::ig_value(t), 0.2565, 1e-4, "ig vs printed value");

  // gain ratio: the quoted 0.2642 is the ratio of two already-rounded
  // numbers (0.2565 / 0.9710); the hand derivation at full precision is
  // the mutual-information sum over the split entropy
  double ig_manual = 0.3 * std::log2(3.0 * 10 / (4 * 4)) +
                     0.1 * std::log2(1.0 * 10 / (4 * 6)) +
                     0.1 * std::log2(1.0 * 10 / (6 * 4)) +
                     0.5 * std::log2(5.0 * 10 / (6 * 6));
  double h_manual = -(0.4 * std::log2(0.4) + 0.6 * std::log2(0.6));
  c.expect_near(keyvec::gr_value(t), ig_manual / h_manual, 1e-4, "gr vs derivation");
  c.expect_near(keyvec::gr_value(t), 0.2642, 2.5e-4, "gr vs printed value");

  std::vector<long long> others{3, 0};
  c.expect_near(keyvec::tf_dcf_value(6, others), 2.0, 1e-4, "tf-dcf");
  c.expect_near(keyvec::thd_value(90, 100, 500, 1000), 0.4, 1e-4, "thd");
  c.expect_near(keyvec::rf_value({0, 9, 4, 7}), 1.0, 1e-4, "rf floor");

  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 200; ++iter) {
    keyvec::AbcdStats r{(long long)(rng() % 40), (long long)(rng() % 40),
                        (long long)(rng() % 40), (long long)(rng() % 40)};
    if (r.n() == 0) continue;
    c.expect(keyvec::ig_value(r) >= -1e-12, "ig negative");
    c.expect(keyvec::chi2_value(r) >= 0.0, "chi2 negative");
    c.expect(keyvec::rf_value(r) >= 1.0, "rf below 1");
    keyvec::AbcdStats bigger = r;
    bigger.a += 1;
    c.expect(keyvec::rf_value(bigger) > keyvec::rf_value(r),
             "rf not increasing in A");
  }
}

// ---- criterion 4 ----

void criterion_evaluation(Criterion& c) {
  std::vector<std::string> golds{"cat1", "cat1", "cat2", "cat2"};
  std::vector<std::string> preds{"cat1", "cat1", "cat1", "cat2"};
  keyvec::EvalResult r = keyvec::evaluate(preds, golds);
  c.expect_near(r.micro_f1, 0.75, 1e-6, "micro-F1");
  c.expect_near(r.macro_f1, 15.0 / 19.0, 1e-6, "macro-F1");

  std::mt19937_64 rng(616);
  const char* cats[5] = {"a", "b", "c", "d", "e"};
  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t n = 1 + rng() % 40;
    std::vector<std::string> g, p;
    for (std::size_t i = 0; i < n; ++i) {
      g.push_back(cats[rng() % 5]);
      p.push_back(cats[rng() % 5]);
    }
    keyvec::EvalResult e = keyvec::evaluate(p, g);
    auto oracle = oracles::confusion(p, g);
    if (std::abs(e.micro_f1 - oracle.accuracy) > 1e-12) {
      c.expect(false, "micro-F1 != accuracy at iteration " + std::to_string(iter));
      return;
    }
  }
}

// ---- criterion 5 ----

void criterion_end_to_end(Criterion& c) {
  fs::path dir = fs::temp_directory_path() / "keyvec_acceptance" / "fixture5";
  fs::remove_all(dir);
  fixture::write_topic_fixture(dir);

  keyvec::EmbeddingModel model =
      keyvec::EmbeddingModel::load((dir / "model.txt").string(),
                                   keyvec::ModelFormat::text);
  // the fixture must honor its own geometry: inter-cluster cosine < 0.3
  double worst = -1.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    for (std::size_t j = i + 1; j < model.size(); ++j) {
      if (model.tokens()[i].substr(0, 4) == model.tokens()[j].substr(0, 4))
        continue;
      worst = std::max(worst, keyvec::dot(model.vector_at(i), model.vector_at(j)));
    }
  }
  c.expect(worst < 0.3, "inter-cluster cosine reaches " + std::to_string(worst));

  fixture::TopicFixture fx;
  fx.model = std::move(model);
  fx.freq = keyvec::load_frequency_list(dir / "freq.tsv");
  fx.vocab = keyvec::crop(fx.model, fx.freq, 20000);
  fx.corpus = keyvec::load_corpus(dir / "corpus");
  c.expect(fx.corpus.categories.size() == 4, "fixture category count");
  c.expect(fx.corpus.split_docs(keyvec::Split::train).size() == 40,
           "fixture train size");
  c.expect(fx.corpus.split_docs(keyvec::Split::test).size() == 20,
           "fixture test size");

  auto run = fixture::run_pipeline(fx, {keyvec::BaseMetric::ig, false}, 3, 5);
  c.expect(run.result.micro_f1 >= 0.90,
           "test micro-F1 " + std::to_string(run.result.micro_f1) + " below 0.90");
}

// ---- criterion 6 ----

void criterion_param_search(Criterion& c) {
  fixture::TopicFixture fx = fixture::make_topic_fixture();
  auto train_docs = fx.corpus.split_docs(keyvec::Split::train);

  keyvec::SearchConfig config;
  config.setups = {
      {3, {keyvec::BaseMetric::ig, false}, 5},
      {3, {keyvec::BaseMetric::rf, false}, 5},
      {3, {keyvec::BaseMetric::tds, false}, 5},
      {1, {keyvec::BaseMetric::thd, false}, 1},
      {3, {keyvec::BaseMetric::idf, false}, 5},
      {5, {keyvec::BaseMetric::ig, true}, 10},
  };
  config.seed = 99;
  config.workers = 2;

  std::vector<std::string> chosen;
  for (int run = 0; run < 5; ++run) {
    keyvec::SearchResult result =
        keyvec::search(fx.model, fx.vocab, train_docs, config);
    chosen.push_back(result.chosen.key());
    if (run == 0) {
      c.expect(!result.steps.empty(), "no trace steps");
      if (!result.steps.empty()) {
        c.expect_near(result.steps[0].tolerance, 0.05, 1e-12,
                      "step-one tolerance");
        c.expect(result.steps[0].max_doc_count == 5 && result.steps[0].cv_ratio == 2,
                 "step-one shape");
      }
      bool member = false;
      for (const keyvec::ParameterSetup& s : config.setups) {
        if (s.key() == result.chosen.key()) member = true;
      }
      c.expect(member, "chosen setup is not a member of the input set");
    }
  }
  for (int run = 1; run < 5; ++run) {
    c.expect(chosen[run] == chosen[0],
             "run " + std::to_string(run) + " chose " + chosen[run] +
                 " instead of " + chosen[0]);
  }
}

// ---- criterion 7 ----

void criterion_significance(Criterion& c) {
  std::vector<std::pair<double, double>> pairs;
  for (double d : {1.0, 2.0, 3.0, -1.0, 4.0}) pairs.push_back({d, 0.0});
  keyvec::WilcoxonResult w = keyvec::wilcoxon_signed_rank(pairs);
  c.expect_near(w.t_statistic, 1.5, 1e-12, "wilcoxon T");
  c.expect_near(w.z, -1.618, 0.01, "wilcoxon z");

  std::vector<std::pair<double, double>> signs;
  for (int i = 0; i < 8; ++i) signs.push_back({1.0, 0.0});
  for (int i = 0; i < 2; ++i) signs.push_back({0.0, 1.0});
  keyvec::SignTestResult s = keyvec::sign_test(signs);
  c.expect_near(s.m_statistic, 3.0, 1e-12, "sign-test M");
  c.expect_near(s.p_one_sided, 56.0 / 1024.0, 1e-6, "sign-test p");

  // Bonferroni flags for 78 simultaneous comparisons, threshold 0.05/78
  const std::size_t m = 78;
  const double threshold = 0.05 / 78.0;
  const double samples[] = {1e-6, 1.86e-5, 6.4e-4, 6.42e-4, 2.84e-3, 0.05, 1.0};
  for (double p : samples) {
    bool by_hand = p < threshold;
    c.expect(keyvec::bonferroni_significant(p, 0.05, m) == by_hand,
             "bonferroni flag mismatch at p=" + std::to_string(p));
  }
}

// ---- criterion 8 ----

void criterion_cli_determinism(Criterion& c) {
  fs::path dir = fs::temp_directory_path() / "keyvec_acceptance" / "fixture8";
  fs::remove_all(dir);
  fixture::write_topic_fixture(dir);
  fs::path corpus = dir / "corpus";

  std::string base = "--root " + corpus.string() + " --model " +
                     (dir / "model.txt").string() + " --freq " +
                     (dir / "freq.tsv").string() +
                     " --metric ig --k 3 --top 5 --seed 7";

  // extract at three worker counts
  std::vector<std::string> extract_bytes, meta_bytes;
  for (int workers : {1, 4, 8}) {
    fs::path out = dir / ("kw_" + std::to_string(workers) + ".jsonl");
    std::string cli_output;
    int rc = run_cli("extract " + base + " --split both --workers " +
                         std::to_string(workers) + " --out " + out.string(),
                     &cli_output);
    c.expect(rc == 0, "extract exited " + std::to_string(rc) + ": " + cli_output);
    extract_bytes.push_back(read_file(out));
    meta_bytes.push_back(read_file(out.string() + ".meta.json"));
  }
  for (std::size_t i = 1; i < extract_bytes.size(); ++i) {
    c.expect(extract_bytes[i] == extract_bytes[0],
             "extract artifacts differ between worker counts");
    c.expect(meta_bytes[i] == meta_bytes[0],
             "extract meta artifacts differ between worker counts");
  }
  c.expect(!extract_bytes[0].empty(), "extract produced no output");

  // keyword lines carry exactly top_n keywords per document
  {
    std::istringstream lines(extract_bytes[0]);
    std::string line;
    int docs = 0;
    bool counts_ok = true;
    while (std::getline(lines, line)) {
      ++docs;
      std::size_t keywords = 0;
      for (std::size_t at = line.find("\"word\""); at != std::string::npos;
           at = line.find("\"word\"", at + 1)) {
        ++keywords;
      }
      if (keywords != 5) counts_ok = false;
    }
    c.expect(docs == 60, "expected 60 JSONL records, saw " + std::to_string(docs));
    c.expect(counts_ok, "a document carried the wrong keyword count");
  }

  // train once, then eval at three worker counts
  fs::path trained = dir / "trained.json";
  {
    std::string cli_output;
    int rc = run_cli("train " + base + " --workers 2 --out " + trained.string(),
                     &cli_output);
    c.expect(rc == 0, "train exited " + std::to_string(rc) + ": " + cli_output);
  }
  std::vector<std::string> eval_bytes;
  for (int workers : {1, 4, 8}) {
    fs::path out = dir / ("eval_" + std::to_string(workers) + ".json");
    std::string cli_output;
    int rc = run_cli("eval --root " + corpus.string() + " --model " +
                         (dir / "model.txt").string() + " --trained " +
                         trained.string() + " --workers " +
                         std::to_string(workers) + " --out " + out.string(),
                     &cli_output);
    c.expect(rc == 0, "eval exited " + std::to_string(rc) + ": " + cli_output);
    eval_bytes.push_back(read_file(out));
  }
  for (std::size_t i = 1; i < eval_bytes.size(); ++i) {
    c.expect(eval_bytes[i] == eval_bytes[0],
             "eval artifacts differ between worker counts");
  }

  // the fixture split is cleanly separable, the report should say so
  c.expect(eval_bytes[0].find("\"f1\": 1.0") != std::string::npos,
           "eval report lacks a perfect F1 on the synthetic fixture");

  // configuration errors exit with status 2 and name the valid metrics
  std::string message;
  int rc = run_cli("extract " + base + " --metric bogus --out " +
                       (dir / "x.jsonl").string(),
                   &message);
  c.expect(rc == 2, "unknown metric exited " + std::to_string(rc) + ", want 2");
  c.expect(message.find("tf-rf") != std::string::npos &&
               message.find("tf-dcf") != std::string::npos,
           "error message does not list the valid metric names");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <path-to-keyvec-cli>\n");
    return 64;
  }
  g_cli_path = argv[1];

  run_criterion(1, "automaton-oracle equivalence (363 sequences + 1000 random sentences)",
                1.0, criterion_fsm);
  run_criterion(2, "composer optimality on 500 random phrases", 5.0,
                criterion_composer);
  run_criterion(3, "weighting metric table and invariants", 0, criterion_metrics);
  run_criterion(4, "micro/macro evaluation formulas", 0, criterion_evaluation);
  run_criterion(5, "end-to-end synthetic categorisation (ig, K=3, top 5)", 10.0,
                criterion_end_to_end);
  run_criterion(6, "parameter search determinism and tolerance", 0,
                criterion_param_search);
  run_criterion(7, "significance tests and Bonferroni flags", 0,
                criterion_significance);
  run_criterion(8, "byte-identical CLI artifacts at 1/4/8 workers", 0,
                criterion_cli_determinism);

  std::printf("%d/8 criteria passed\n", 8 - g_failed);
  return g_failed;
}
