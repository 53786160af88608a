#include "keyvec/tune.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "keyvec/classify.hpp"

namespace keyvec {

namespace {

std::string padded(int value) {
  std::string s = std::to_string(value);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

}  // namespace

std::string ParameterSetup::key() const {
  return "metric=" + metric_name(metric) + ",k=" + padded(k) +
         ",top=" + padded(keyword_count);
}

std::vector<ParameterSetup> make_setups(std::span<const int> ks,
                                        std::span<const std::string> names,
                                        std::span<const int> keyword_counts,
                                        bool include_chi2) {
  std::vector<ParameterSetup> setups;
  for (const std::string& name : names) {
    auto kind = parse_metric(name);
    if (!kind) {
      throw std::invalid_argument("unknown metric \"" + name + "\"");
    }
    if (!include_chi2 && is_chi2_family(*kind)) continue;
    for (int k : ks) {
      for (int count : keyword_counts) {
        setups.push_back({k, *kind, count});
      }
    }
  }
  return setups;
}

SearchResult search(const EmbeddingModel& model, const CroppedVocab& vocab,
                    std::span<const Document* const> train_docs,
                    const SearchConfig& config) {
  if (config.setups.size() < 2) {
    throw std::invalid_argument("search: needs at least two candidate setups");
  }
  if (train_docs.empty()) throw std::invalid_argument("search: empty corpus");

  std::set<std::string> cat_set;
  for (const Document* d : train_docs) cat_set.insert(d->category);
  const double n_categories = double(cat_set.size());

  SearchResult result;
  std::vector<ParameterSetup> alive = config.setups;

  auto pick_final = [&](const std::vector<ParameterSetup>& survivors) {
    return *std::min_element(survivors.begin(), survivors.end(),
                             [](const ParameterSetup& a, const ParameterSetup& b) {
                               return a.key() < b.key();
                             });
  };

  for (std::size_t step = 0; step < config.doc_count_ladder.size(); ++step) {
    const int max_doc_count = config.doc_count_ladder[step];

    // up to max_doc_count documents per category, lexicographic ids
    std::map<std::string, std::vector<const Document*>> by_cat;
    for (const Document* d : train_docs) by_cat[d->category].push_back(d);
    std::vector<const Document*> sample;
    for (auto& [cat, docs] : by_cat) {
      (void)cat;
      std::sort(docs.begin(), docs.end(),
                [](const Document* a, const Document* b) { return a->id < b->id; });
      std::size_t take = std::min(docs.size(), std::size_t(max_doc_count));
      sample.insert(sample.end(), docs.begin(), docs.begin() + std::ptrdiff_t(take));
    }

    std::vector<std::string> labels, ids;
    for (const Document* d : sample) {
      labels.push_back(d->category);
      ids.push_back(d->id);
    }

    // expansion and statistics depend only on k; share them across setups
    std::map<int, std::vector<WordMultiset>> expansion_cache;
    std::map<int, CorpusStats> stats_cache;
    auto expansion_for = [&](int k) -> const std::vector<WordMultiset>& {
      auto it = expansion_cache.find(k);
      if (it == expansion_cache.end()) {
        it = expansion_cache
                 .emplace(k, expand_docs(model, vocab, sample, k, config.workers))
                 .first;
        stats_cache.emplace(k, stats_from_expansion(sample, it->second));
      }
      return it->second;
    };

    std::vector<int> ratios = step == 0 ? config.cv_ratios_first
                                        : std::vector<int>{config.cv_ratio_rest};
    for (int ratio : ratios) {
      StepTrace trace;
      trace.max_doc_count = max_doc_count;
      trace.cv_ratio = ratio;
      trace.tolerance = double(ratio) / (2.0 * double(max_doc_count) * n_categories);

      std::vector<double> scores(alive.size(), 0.0);
      double best = 0.0;
      for (std::size_t si = 0; si < alive.size(); ++si) {
        const ParameterSetup& setup = alive[si];
        const auto& expansions = expansion_for(setup.k);
        const CorpusStats& stats = stats_cache.at(setup.k);
        auto docs = keywords_for_docs(model, sample, expansions, stats,
                                      setup.metric, setup.keyword_count,
                                      config.workers);
        std::vector<Vec> vectors;
        vectors.reserve(docs.size());
        for (const DocKeywords& dk : docs) vectors.push_back(dk.vector);
        EvalResult cv = cross_validate(vectors, labels, ids, ratio, config.reg,
                                       config.seed);
        scores[si] = cv.micro_f1;
        best = std::max(best, scores[si]);
      }

      std::vector<ParameterSetup> survivors;
      for (std::size_t si = 0; si < alive.size(); ++si) {
        bool keep = scores[si] >= best - trace.tolerance;
        trace.setups.push_back({alive[si].key(), scores[si], keep});
        if (keep) survivors.push_back(alive[si]);
      }
      trace.best_score = best;
      result.steps.push_back(std::move(trace));
      alive = std::move(survivors);
      if (alive.empty()) {
        throw std::logic_error("search: survivor set empty");  // unreachable
      }
      if (alive.size() == 1) {
        result.chosen = alive.front();
        result.early_return = true;
        return result;
      }
    }
  }

  result.chosen = pick_final(alive);
  return result;
}

}  // namespace keyvec
