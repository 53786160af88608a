#include "keyvec/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace keyvec {

namespace {
constexpr int kSnapshotVersion = 1;
}

void save_trained(const TrainedModel& model, const std::string& path) {
  nlohmann::json j;
  j["version"] = kSnapshotVersion;
  j["kind"] = "trained_model";
  j["config"] = {{"k1", model.config.k1},
                 {"k2", model.config.k2},
                 {"metric", metric_name(model.config.metric)},
                 {"top_n", model.config.top_n},
                 {"crop_size", model.config.crop_size}};
  j["reg"] = model.reg;
  j["seed"] = model.seed;
  j["vocab"] = model.vocab_tokens;
  j["stats"] = nlohmann::json::parse(model.stats.to_json_string());
  j["classifier"] = {{"categories", model.classifier.categories},
                     {"weights", model.classifier.weights},
                     {"biases", model.classifier.biases},
                     {"reg", model.classifier.reg},
                     {"seed", model.classifier.seed},
                     {"dim", model.classifier.dim}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

TrainedModel load_trained(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("version", 0) != kSnapshotVersion ||
      j.value("kind", "") != "trained_model") {
    throw std::runtime_error("trained-model snapshot: unsupported format or version");
  }
  TrainedModel model;
  const auto& cfg = j.at("config");
  model.config.k1 = cfg.at("k1").get<int>();
  model.config.k2 = cfg.at("k2").get<int>();
  auto metric = parse_metric(cfg.at("metric").get<std::string>());
  if (!metric) throw std::runtime_error("snapshot: unknown metric");
  model.config.metric = *metric;
  model.config.top_n = cfg.at("top_n").get<int>();
  model.config.crop_size = cfg.at("crop_size").get<std::size_t>();
  model.reg = j.at("reg").get<double>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.vocab_tokens = j.at("vocab").get<std::vector<std::string>>();
  model.stats = CorpusStats::from_json_string(j.at("stats").dump());
  const auto& cls = j.at("classifier");
  model.classifier.categories = cls.at("categories").get<std::vector<std::string>>();
  model.classifier.weights =
      cls.at("weights").get<std::vector<std::vector<double>>>();
  model.classifier.biases = cls.at("biases").get<std::vector<double>>();
  model.classifier.reg = cls.at("reg").get<double>();
  model.classifier.seed = cls.at("seed").get<std::uint64_t>();
  model.classifier.dim = cls.at("dim").get<std::size_t>();
  return model;
}

CroppedVocab vocab_from_tokens(const EmbeddingModel& model,
                               const std::vector<std::string>& tokens) {
  CroppedVocab vocab;
  vocab.target_size = tokens.size();
  vocab.members.reserve(tokens.size());
  for (const std::string& token : tokens) {
    auto idx = model.index_of(token);
    if (!idx) {
      throw std::runtime_error("vocabulary token missing from model: " + token);
    }
    vocab.members.push_back(*idx);
  }
  std::sort(vocab.members.begin(), vocab.members.end(),
            [&](std::size_t a, std::size_t b) {
              return model.tokens()[a] < model.tokens()[b];
            });
  return vocab;
}

std::vector<std::string> vocab_tokens(const EmbeddingModel& model,
                                      const CroppedVocab& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(vocab.members.size());
  for (std::size_t row : vocab.members) tokens.push_back(model.tokens()[row]);
  return tokens;
}

}  // namespace keyvec
