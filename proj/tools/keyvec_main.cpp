// keyvec - discriminative keyword extraction and text categorisation CLI
//
// Subcommands: crop, extract, train, eval, tune, report. Every output
// artifact echoes the resolved configuration for provenance; JSONL outputs
// carry it in a sibling <out>.meta.json. Exit codes: 2 for configuration
// errors, 1 for runtime errors.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "keyvec/classify.hpp"
#include "keyvec/corpus.hpp"
#include "keyvec/embedding.hpp"
#include "keyvec/extract.hpp"
#include "keyvec/snapshot.hpp"
#include "keyvec/tune.hpp"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat config files: either a JSON object or key=value lines ('#' starts a
// comment). Entries become --key=value arguments unless the same flag is
// already present on the command line, so flags always win.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        entries.emplace_back(key, value.get<std::string>());
      } else if (value.is_boolean()) {
        entries.emplace_back(key, value.get<bool>() ? "true" : "false");
      } else {
        entries.emplace_back(key, value.dump());
      }
    }
    return entries;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t eq = line.find('=', start);
    if (eq == std::string::npos) {
      throw ConfigError("config file " + path + " line " +
                        std::to_string(line_no) + ": expected key=value");
    }
    std::string key = line.substr(start, eq - start);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::size_t vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);
    entries.emplace_back(key, value);
  }
  return entries;
}

std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  auto given = [&](const std::string& flag) {
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  for (const auto& [key, value] : read_config_file(config_path)) {
    if (!given("--" + key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

template <class F>
auto stage(const char* module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(module) + ": " + e.what());
  }
}

struct CommonOptions {
  std::string root;
  std::string model_path;
  std::string model_format = "text";
  std::string freq_path;
  std::size_t crop_size = 20000;
  std::string metric = "ig";
  int k = 0;   // when set, k1 = k2 = k
  int k1 = 1;
  int k2 = 1;
  int top_n = 10;
  double reg = 1.0;
  std::uint64_t seed = 0;
  int workers = 1;

  void resolve_k() {
    if (k > 0) {
      k1 = k;
      k2 = k;
    }
  }
};

const CLI::Validator metric_validator = CLI::Validator(
    [](std::string& name) -> std::string {
      if (keyvec::parse_metric(name)) return {};
      std::string msg = "unknown metric \"" + name + "\"; valid metrics:";
      for (const std::string& m : keyvec::metric_names()) msg += " " + m;
      return msg;
    },
    "METRIC");

void add_model_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--model", opt.model_path, "embedding model file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--model-format", opt.model_format, "model file format")
      ->check(CLI::IsMember({"binary", "text"}))
      ->capture_default_str();
}

void add_vocab_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--freq", opt.freq_path, "frequency list (token<TAB>count)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--crop-size", opt.crop_size, "cropped vocabulary size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_pipeline_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--root", opt.root, "corpus root with train/ and test/")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--metric", opt.metric, "word-weighting metric")
      ->check(metric_validator)
      ->capture_default_str();
  cmd->add_option("--k", opt.k, "expansion breadth (sets K1 = K2)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k1", opt.k1, "global expansion breadth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--k2", opt.k2, "local expansion breadth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--top", opt.top_n, "keywords kept per document")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "seed for all randomness")
      ->capture_default_str();
  cmd->add_option("--workers", opt.workers, "worker thread count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_config_file(CLI::App* cmd, std::string& config_path) {
  cmd->add_option("--config", config_path,
                  "config file (key=value or JSON); flags take precedence")
      ->check(CLI::ExistingFile);
}

// Worker count is a runtime resource setting, not provenance: results are
// independent of it, so it stays out of the echoed configuration.
json config_echo(const std::string& command, const CommonOptions& opt) {
  return json{{"command", command},
              {"root", opt.root},
              {"model", opt.model_path},
              {"model_format", opt.model_format},
              {"freq", opt.freq_path},
              {"crop_size", opt.crop_size},
              {"metric", opt.metric},
              {"k1", opt.k1},
              {"k2", opt.k2},
              {"top_n", opt.top_n},
              {"reg", opt.reg},
              {"seed", opt.seed}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

keyvec::ModelFormat parse_format(const std::string& name) {
  return name == "binary" ? keyvec::ModelFormat::binary
                          : keyvec::ModelFormat::text;
}

keyvec::MetricKind metric_of(const CommonOptions& opt) {
  auto kind = keyvec::parse_metric(opt.metric);
  if (!kind) throw ConfigError("unknown metric \"" + opt.metric + "\"");
  return *kind;
}

struct LoadedInputs {
  keyvec::EmbeddingModel model;
  keyvec::CroppedVocab vocab;
  keyvec::LabeledCorpus corpus;
};

LoadedInputs load_inputs(const CommonOptions& opt, bool with_corpus = true,
                         bool with_vocab = true) {
  LoadedInputs in;
  in.model = stage("embedding_store", [&] {
    return keyvec::EmbeddingModel::load(opt.model_path,
                                        parse_format(opt.model_format));
  });
  if (with_vocab) {
    in.vocab = stage("embedding_store", [&] {
      auto freq = keyvec::load_frequency_list(opt.freq_path);
      return keyvec::crop(in.model, freq, opt.crop_size);
    });
  }
  if (with_corpus) {
    in.corpus = stage("corpus_io", [&] {
      return keyvec::load_corpus(opt.root, [](const std::string& msg) {
        std::fprintf(stderr, "warning: %s\n", msg.c_str());
      });
    });
  }
  return in;
}

// ---- crop ----

int run_crop(const CommonOptions& opt, const std::string& out_path) {
  auto in = load_inputs(opt, /*with_corpus=*/false);
  json j;
  j["config"] = {{"command", "crop"},
                 {"model", opt.model_path},
                 {"model_format", opt.model_format},
                 {"freq", opt.freq_path},
                 {"crop_size", opt.crop_size}};
  j["dim"] = in.model.dim();
  j["tokens"] = keyvec::vocab_tokens(in.model, in.vocab);
  write_text(out_path, j.dump(2) + "\n");
  return 0;
}

// ---- shared pipeline pieces ----

struct PipelineState {
  LoadedInputs in;
  std::vector<const keyvec::Document*> train_docs;
  std::vector<keyvec::WordMultiset> train_k1;
  keyvec::CorpusStats stats;
};

PipelineState prepare_stats(const CommonOptions& opt,
                            const std::string& stats_in) {
  PipelineState st;
  st.in = load_inputs(opt);
  st.train_docs = st.in.corpus.split_docs(keyvec::Split::train);
  if (!stats_in.empty()) {
    st.stats = stage("term_statistics", [&] {
      std::ifstream f(stats_in, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + stats_in);
      std::ostringstream buf;
      buf << f.rdbuf();
      return keyvec::CorpusStats::from_json_string(buf.str());
    });
  } else {
    st.train_k1 = stage("keyword_extractor", [&] {
      return keyvec::expand_docs(st.in.model, st.in.vocab, st.train_docs,
                                 opt.k1, opt.workers);
    });
    st.stats = stage("term_statistics", [&] {
      return keyvec::stats_from_expansion(st.train_docs, st.train_k1);
    });
  }
  return st;
}

std::vector<keyvec::DocKeywords> keywords_for_split(
    PipelineState& st, const CommonOptions& opt,
    std::vector<const keyvec::Document*> docs) {
  return stage("keyword_extractor", [&] {
    std::vector<keyvec::WordMultiset> expanded;
    if (opt.k2 == opt.k1 && !st.train_k1.empty() && docs == st.train_docs) {
      expanded = st.train_k1;
    } else {
      expanded = keyvec::expand_docs(st.in.model, st.in.vocab, docs, opt.k2,
                                     opt.workers);
    }
    return keyvec::keywords_for_docs(st.in.model, docs, expanded, st.stats,
                                     metric_of(opt), opt.top_n, opt.workers);
  });
}

// ---- extract ----

int run_extract(const CommonOptions& opt, const std::string& split,
                const std::string& out_path, const std::string& stats_in,
                const std::string& stats_out) {
  PipelineState st = prepare_stats(opt, stats_in);

  std::vector<const keyvec::Document*> docs;
  if (split == "train" || split == "both") {
    auto t = st.in.corpus.split_docs(keyvec::Split::train);
    docs.insert(docs.end(), t.begin(), t.end());
  }
  if (split == "test" || split == "both") {
    auto t = st.in.corpus.split_docs(keyvec::Split::test);
    docs.insert(docs.end(), t.begin(), t.end());
  }

  auto results = keywords_for_split(st, opt, docs);

  std::ostringstream lines;
  for (const keyvec::DocKeywords& dk : results) {
    json rec;
    rec["id"] = dk.id;
    rec["category"] = dk.category;
    json kws = json::array();
    for (const auto& [word, score] : dk.keywords) {
      kws.push_back({{"word", word}, {"score", score}});
    }
    rec["keywords"] = std::move(kws);
    lines << rec.dump() << '\n';
  }
  write_text(out_path, lines.str());

  json meta;
  meta["config"] = config_echo("extract", opt);
  meta["config"]["split"] = split;
  meta["documents"] = results.size();
  write_text(out_path + ".meta.json", meta.dump(2) + "\n");

  if (!stats_out.empty()) {
    write_text(stats_out, st.stats.to_json_string() + "\n");
  }
  return 0;
}

// ---- train ----

int run_train(const CommonOptions& opt, const std::string& out_path,
              const std::string& stats_out) {
  PipelineState st = prepare_stats(opt, "");
  auto train_kw = keywords_for_split(st, opt, st.train_docs);

  std::vector<keyvec::Vec> vectors;
  std::vector<std::string> labels;
  for (const keyvec::DocKeywords& dk : train_kw) {
    vectors.push_back(dk.vector);
    labels.push_back(dk.category);
  }
  keyvec::LinearModel classifier = stage("categorizer", [&] {
    return keyvec::train(vectors, labels, opt.reg, opt.seed);
  });

  keyvec::TrainedModel trained;
  trained.config.k1 = opt.k1;
  trained.config.k2 = opt.k2;
  trained.config.metric = metric_of(opt);
  trained.config.top_n = opt.top_n;
  trained.config.crop_size = opt.crop_size;
  trained.reg = opt.reg;
  trained.seed = opt.seed;
  trained.vocab_tokens = keyvec::vocab_tokens(st.in.model, st.in.vocab);
  trained.stats = st.stats;
  trained.classifier = std::move(classifier);
  keyvec::save_trained(trained, out_path);

  if (!stats_out.empty()) {
    write_text(stats_out, st.stats.to_json_string() + "\n");
  }
  return 0;
}

// ---- eval ----

json eval_report(const keyvec::EvalResult& result) {
  json per_category = json::array();
  for (std::size_t i = 0; i < result.categories.size(); ++i) {
    const keyvec::CategoryCounts& c = result.counts[i];
    double p = c.tp + c.fp > 0 ? double(c.tp) / double(c.tp + c.fp) : 0.0;
    double r = c.tp + c.fn > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    per_category.push_back({{"category", result.categories[i]},
                            {"tp", c.tp},
                            {"fp", c.fp},
                            {"fn", c.fn},
                            {"precision", p},
                            {"recall", r},
                            {"f1", f1}});
  }
  return json{{"per_category", std::move(per_category)},
              {"micro",
               {{"precision", result.micro_precision},
                {"recall", result.micro_recall},
                {"f1", result.micro_f1}}},
              {"macro",
               {{"precision", result.macro_precision},
                {"recall", result.macro_recall},
                {"f1", result.macro_f1}}}};
}

std::string eval_csv(const keyvec::EvalResult& result) {
  std::ostringstream csv;
  csv << "category,tp,fp,fn,precision,recall,f1\n";
  csv.precision(17);
  for (std::size_t i = 0; i < result.categories.size(); ++i) {
    const keyvec::CategoryCounts& c = result.counts[i];
    double p = c.tp + c.fp > 0 ? double(c.tp) / double(c.tp + c.fp) : 0.0;
    double r = c.tp + c.fn > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    csv << result.categories[i] << ',' << c.tp << ',' << c.fp << ',' << c.fn
        << ',' << p << ',' << r << ',' << f1 << '\n';
  }
  csv << "micro,,,," << result.micro_precision << ',' << result.micro_recall
      << ',' << result.micro_f1 << '\n';
  csv << "macro,,,," << result.macro_precision << ',' << result.macro_recall
      << ',' << result.macro_f1 << '\n';
  return csv.str();
}

int run_eval(CommonOptions opt, const std::string& trained_path,
             const std::string& out_path, const std::string& csv_path) {
  keyvec::TrainedModel trained = stage("categorizer", [&] {
    return keyvec::load_trained(trained_path);
  });
  opt.k1 = trained.config.k1;
  opt.k2 = trained.config.k2;
  opt.metric = keyvec::metric_name(trained.config.metric);
  opt.top_n = trained.config.top_n;
  opt.crop_size = trained.config.crop_size;
  opt.reg = trained.reg;
  opt.seed = trained.seed;

  auto in = load_inputs(opt, /*with_corpus=*/true, /*with_vocab=*/false);
  in.vocab = stage("embedding_store", [&] {
    return keyvec::vocab_from_tokens(in.model, trained.vocab_tokens);
  });

  auto test_docs = in.corpus.split_docs(keyvec::Split::test);
  auto expanded = stage("keyword_extractor", [&] {
    return keyvec::expand_docs(in.model, in.vocab, test_docs, opt.k2,
                               opt.workers);
  });
  auto keywords = stage("keyword_extractor", [&] {
    return keyvec::keywords_for_docs(in.model, test_docs, expanded,
                                     trained.stats, trained.config.metric,
                                     trained.config.top_n, opt.workers);
  });

  std::vector<std::string> predictions, golds;
  for (const keyvec::DocKeywords& dk : keywords) {
    predictions.push_back(
        keyvec::predict(trained.classifier,
                        std::span<const float>(dk.vector.data(), dk.vector.size())));
    golds.push_back(dk.category);
  }
  keyvec::EvalResult result = stage("categorizer", [&] {
    return keyvec::evaluate(predictions, golds);
  });

  json j;
  j["config"] = config_echo("eval", opt);
  j["config"]["trained"] = trained_path;
  j["report"] = eval_report(result);
  write_text(out_path, j.dump(2) + "\n");
  if (!csv_path.empty()) write_text(csv_path, eval_csv(result));
  return 0;
}

// ---- tune ----

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      int v = std::stoi(item);
      if (v < 1) throw std::invalid_argument("non-positive");
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": bad value \"" + item + "\"");
    }
  }
  if (values.empty()) throw ConfigError(std::string(what) + ": empty list");
  return values;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

int run_tune(const CommonOptions& opt, const std::string& k_grid,
             const std::string& metrics_list, const std::string& top_grid,
             bool include_chi2, const std::string& out_path) {
  auto ks = parse_int_list(k_grid, "--k-grid");
  auto tops = parse_int_list(top_grid, "--top-grid");
  std::vector<std::string> names = metrics_list.empty()
                                       ? keyvec::metric_names()
                                       : parse_name_list(metrics_list);
  for (const std::string& name : names) {
    if (!keyvec::parse_metric(name)) {
      throw ConfigError("unknown metric \"" + name + "\" in --metrics");
    }
  }

  auto in = load_inputs(opt);
  auto train_docs = in.corpus.split_docs(keyvec::Split::train);

  keyvec::SearchConfig config;
  config.setups = stage("param_search", [&] {
    return keyvec::make_setups(ks, names, tops, include_chi2);
  });
  config.reg = opt.reg;
  config.seed = opt.seed;
  config.workers = opt.workers;

  keyvec::SearchResult result = stage("param_search", [&] {
    return keyvec::search(in.model, in.vocab, train_docs, config);
  });

  json steps = json::array();
  for (const keyvec::StepTrace& st : result.steps) {
    json setups = json::array();
    for (const keyvec::SetupTrace& t : st.setups) {
      setups.push_back(
          {{"setup", t.key}, {"score", t.score}, {"survived", t.survived}});
    }
    steps.push_back({{"max_doc_count", st.max_doc_count},
                     {"cv_ratio", st.cv_ratio},
                     {"tolerance", st.tolerance},
                     {"best_score", st.best_score},
                     {"setups", std::move(setups)}});
  }
  json j;
  j["config"] = config_echo("tune", opt);
  j["config"]["k_grid"] = ks;
  j["config"]["metrics"] = names;
  j["config"]["top_grid"] = tops;
  j["config"]["include_chi2"] = include_chi2;
  j["steps"] = std::move(steps);
  j["early_return"] = result.early_return;
  j["chosen"] = {{"k", result.chosen.k},
                 {"metric", keyvec::metric_name(result.chosen.metric)},
                 {"keyword_count", result.chosen.keyword_count},
                 {"key", result.chosen.key()}};
  write_text(out_path, j.dump(2) + "\n");
  return 0;
}

// ---- report ----

int run_report(const CommonOptions& opt, const std::string& metrics_list,
               const std::string& out_path, const std::string& csv_path) {
  std::vector<std::string> names = metrics_list.empty()
                                       ? keyvec::metric_names()
                                       : parse_name_list(metrics_list);
  for (const std::string& name : names) {
    if (!keyvec::parse_metric(name)) {
      throw ConfigError("unknown metric \"" + name + "\" in --metrics");
    }
  }

  PipelineState st = prepare_stats(opt, "");
  auto test_docs = st.in.corpus.split_docs(keyvec::Split::test);
  auto test_expanded = stage("keyword_extractor", [&] {
    return keyvec::expand_docs(st.in.model, st.in.vocab, test_docs, opt.k2,
                               opt.workers);
  });

  json rows = json::array();
  std::ostringstream csv;
  csv << "metric,micro_f1,macro_f1\n";
  csv.precision(17);
  for (const std::string& name : names) {
    CommonOptions metric_opt = opt;
    metric_opt.metric = name;
    auto train_kw = keywords_for_split(st, metric_opt, st.train_docs);

    std::vector<keyvec::Vec> vectors;
    std::vector<std::string> labels;
    for (const keyvec::DocKeywords& dk : train_kw) {
      vectors.push_back(dk.vector);
      labels.push_back(dk.category);
    }
    keyvec::LinearModel classifier = stage("categorizer", [&] {
      return keyvec::train(vectors, labels, opt.reg, opt.seed);
    });

    auto test_kw = stage("keyword_extractor", [&] {
      return keyvec::keywords_for_docs(st.in.model, test_docs, test_expanded,
                                       st.stats, metric_of(metric_opt),
                                       opt.top_n, opt.workers);
    });
    std::vector<std::string> predictions, golds;
    for (const keyvec::DocKeywords& dk : test_kw) {
      predictions.push_back(keyvec::predict(
          classifier,
          std::span<const float>(dk.vector.data(), dk.vector.size())));
      golds.push_back(dk.category);
    }
    keyvec::EvalResult result = keyvec::evaluate(predictions, golds);
    rows.push_back({{"metric", name},
                    {"micro_f1", result.micro_f1},
                    {"macro_f1", result.macro_f1}});
    csv << name << ',' << result.micro_f1 << ',' << result.macro_f1 << '\n';
  }

  json j;
  j["config"] = config_echo("report", opt);
  j["config"]["metrics"] = names;
  j["results"] = std::move(rows);
  write_text(out_path, j.dump(2) + "\n");
  if (!csv_path.empty()) write_text(csv_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminative keyword extraction and text categorisation"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string out_path, csv_path, split = "train";
  std::string stats_in, stats_out, trained_path, config_path;
  std::string k_grid = "1,3,10,30,90", top_grid = "1,5,10,20", metrics_list;
  bool include_chi2 = false;

  CLI::App* crop_cmd = app.add_subcommand("crop", "write a cropped-vocabulary snapshot");
  add_model_options(crop_cmd, opt);
  add_vocab_options(crop_cmd, opt);
  crop_cmd->add_option("--out", out_path, "output JSON")->required();
  add_config_file(crop_cmd, config_path);

  CLI::App* extract_cmd = app.add_subcommand("extract", "extract keywords to JSON Lines");
  add_model_options(extract_cmd, opt);
  add_vocab_options(extract_cmd, opt);
  add_pipeline_options(extract_cmd, opt);
  extract_cmd->add_option("--split", split, "documents to extract for")
      ->check(CLI::IsMember({"train", "test", "both"}))
      ->capture_default_str();
  extract_cmd->add_option("--stats-in", stats_in, "reuse a statistics snapshot")
      ->check(CLI::ExistingFile);
  extract_cmd->add_option("--stats-out", stats_out, "write the statistics snapshot");
  extract_cmd->add_option("--out", out_path, "output JSONL")->required();
  add_config_file(extract_cmd, config_path);

  CLI::App* train_cmd = app.add_subcommand("train", "fit statistics and classifier");
  add_model_options(train_cmd, opt);
  add_vocab_options(train_cmd, opt);
  add_pipeline_options(train_cmd, opt);
  train_cmd->add_option("--reg", opt.reg, "classifier regularization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--stats-out", stats_out, "write the statistics snapshot");
  train_cmd->add_option("--out", out_path, "output trained-model snapshot")->required();
  add_config_file(train_cmd, config_path);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a trained model on the test split");
  add_model_options(eval_cmd, opt);
  eval_cmd->add_option("--root", opt.root, "corpus root with train/ and test/")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--trained", trained_path, "trained-model snapshot")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--workers", opt.workers, "worker thread count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--out", out_path, "output report JSON")->required();
  eval_cmd->add_option("--csv", csv_path, "optional CSV table");
  add_config_file(eval_cmd, config_path);

  CLI::App* tune_cmd = app.add_subcommand("tune", "pick (K, metric, keyword count)");
  add_model_options(tune_cmd, opt);
  add_vocab_options(tune_cmd, opt);
  add_pipeline_options(tune_cmd, opt);
  tune_cmd->add_option("--reg", opt.reg, "classifier regularization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tune_cmd->add_option("--k-grid", k_grid, "candidate K values")
      ->capture_default_str();
  tune_cmd->add_option("--metrics", metrics_list,
                       "candidate metrics (default: all but the chi2 family)");
  tune_cmd->add_option("--top-grid", top_grid, "candidate keyword counts")
      ->capture_default_str();
  tune_cmd->add_flag("--include-chi2", include_chi2,
                     "keep chi2/tf-chi2 among the candidates");
  tune_cmd->add_option("--out", out_path, "output trace JSON")->required();
  add_config_file(tune_cmd, config_path);

  CLI::App* report_cmd = app.add_subcommand("report", "per-metric train/test F1 table");
  add_model_options(report_cmd, opt);
  add_vocab_options(report_cmd, opt);
  add_pipeline_options(report_cmd, opt);
  report_cmd->add_option("--reg", opt.reg, "classifier regularization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  report_cmd->add_option("--metrics", metrics_list, "metrics to evaluate (default: all)");
  report_cmd->add_option("--out", out_path, "output JSON")->required();
  report_cmd->add_option("--csv", csv_path, "optional CSV table");
  add_config_file(report_cmd, config_path);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 vector parse order
    app.parse(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "keyvec: %s\n", e.what());
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opt.resolve_k();
  try {
    if (crop_cmd->parsed()) return run_crop(opt, out_path);
    if (extract_cmd->parsed())
      return run_extract(opt, split, out_path, stats_in, stats_out);
    if (train_cmd->parsed()) return run_train(opt, out_path, stats_out);
    if (eval_cmd->parsed())
      return run_eval(opt, trained_path, out_path, csv_path);
    if (tune_cmd->parsed())
      return run_tune(opt, k_grid, metrics_list, top_grid, include_chi2, out_path);
    if (report_cmd->parsed())
      return run_report(opt, metrics_list, out_path, csv_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "keyvec: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "keyvec: %s\n", e.what());
    return 1;
  }
  return 0;
}
