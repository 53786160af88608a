#include "keyvec/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "keyvec/parallel.hpp"

namespace keyvec {

namespace {

constexpr int kEpochs = 100;

// Portable Fisher-Yates; std::shuffle is not bit-stable across standard
// library implementations.
void deterministic_shuffle(std::vector<std::size_t>& idx,
                           std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = std::size_t(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace

double LinearModel::decision(std::size_t category_index,
                             std::span<const float> v) const {
  const std::vector<double>& w = weights[category_index];
  double s = biases[category_index];
  for (std::size_t i = 0; i < dim; ++i) s += w[i] * double(v[i]);
  return s;
}

LinearModel train(const std::vector<Vec>& vectors,
                  const std::vector<std::string>& labels, double reg,
                  std::uint64_t seed) {
  if (vectors.size() != labels.size() || vectors.empty()) {
    throw std::invalid_argument("train: vectors and labels must be nonempty and equal-sized");
  }
  if (reg <= 0.0) throw std::invalid_argument("train: regularization must be positive");
  std::set<std::string> cats(labels.begin(), labels.end());
  if (cats.size() < 2) {
    throw std::invalid_argument("train: at least two categories required");
  }
  const std::size_t dim = vectors.front().size();
  for (const Vec& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("train: dimension mismatch");
  }

  LinearModel model;
  model.categories.assign(cats.begin(), cats.end());
  model.weights.assign(model.categories.size(), std::vector<double>(dim, 0.0));
  model.biases.assign(model.categories.size(), 0.0);
  model.reg = reg;
  model.seed = seed;
  model.dim = dim;

  const std::size_t n = vectors.size();
  parallel_for(model.categories.size(), int(model.categories.size()),
               [&](std::size_t ci) {
    const std::string& cat = model.categories[ci];
    std::vector<double>& w = model.weights[ci];
    double& b = model.biases[ci];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (ci + 1)));

    long long t = 0;
    for (int epoch = 0; epoch < kEpochs; ++epoch) {
      deterministic_shuffle(order, rng);
      for (std::size_t i : order) {
        ++t;
        double eta = 1.0 / (reg * double(t));
        const Vec& x = vectors[i];
        double y = labels[i] == cat ? 1.0 : -1.0;
        double margin = b;
        for (std::size_t d = 0; d < dim; ++d) margin += w[d] * double(x[d]);
        margin *= y;
        // bias rides along as a regularized always-one feature; without the
        // shrink it performs a random walk whenever every point sits inside
        // the margin (small corpora with strong regularization)
        double shrink = 1.0 - eta * reg;
        for (std::size_t d = 0; d < dim; ++d) w[d] *= shrink;
        b *= shrink;
        if (margin < 1.0) {
          for (std::size_t d = 0; d < dim; ++d) w[d] += eta * y * double(x[d]);
          b += eta * y;
        }
      }
    }
  });
  return model;
}

std::string predict(const LinearModel& model, std::span<const float> v) {
  if (v.size() != model.dim) {
    throw std::invalid_argument("predict: dimension mismatch");
  }
  std::size_t best = 0;
  double best_score = model.decision(0, v);
  for (std::size_t ci = 1; ci < model.categories.size(); ++ci) {
    double s = model.decision(ci, v);
    if (s > best_score) {  // ties keep the lexicographically smaller category
      best_score = s;
      best = ci;
    }
  }
  return model.categories[best];
}

EvalResult eval_from_counts(std::vector<std::string> categories,
                            std::vector<CategoryCounts> counts) {
  EvalResult r;
  r.categories = std::move(categories);
  r.counts = std::move(counts);

  long long tp = 0, fp = 0, fn = 0;
  double sum_p = 0.0, sum_r = 0.0;
  for (const CategoryCounts& c : r.counts) {
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
    sum_p += c.tp + c.fp > 0 ? double(c.tp) / double(c.tp + c.fp) : 0.0;
    sum_r += c.tp + c.fn > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
  }
  const double n_cats = double(r.counts.size());
  r.micro_precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
  r.micro_recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
  r.macro_precision = n_cats > 0 ? sum_p / n_cats : 0.0;
  r.macro_recall = n_cats > 0 ? sum_r / n_cats : 0.0;
  auto f1 = [](double p, double rec) {
    return p + rec > 0 ? 2.0 * p * rec / (p + rec) : 0.0;
  };
  r.micro_f1 = f1(r.micro_precision, r.micro_recall);
  r.macro_f1 = f1(r.macro_precision, r.macro_recall);
  return r;
}

EvalResult evaluate(const std::vector<std::string>& predictions,
                    const std::vector<std::string>& golds) {
  if (predictions.size() != golds.size()) {
    throw std::invalid_argument("evaluate: length mismatch");
  }
  if (predictions.empty()) throw std::invalid_argument("evaluate: empty input");

  std::set<std::string> cats(golds.begin(), golds.end());
  cats.insert(predictions.begin(), predictions.end());
  std::vector<std::string> categories(cats.begin(), cats.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < categories.size(); ++i) index[categories[i]] = i;

  std::vector<CategoryCounts> counts(categories.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == golds[i]) {
      ++counts[index[golds[i]]].tp;
    } else {
      ++counts[index[predictions[i]]].fp;
      ++counts[index[golds[i]]].fn;
    }
  }
  return eval_from_counts(std::move(categories), std::move(counts));
}

std::vector<int> fold_assignment(const std::vector<std::string>& labels,
                                 const std::vector<std::string>& ids,
                                 int folds) {
  // Sort (category, id) pairs, then deal folds round-robin with a counter
  // continuing across categories so fold sizes stay balanced.
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return ids[a] < ids[b];
  });
  std::vector<int> fold(labels.size(), 0);
  int counter = 0;
  for (std::size_t i : order) {
    fold[i] = counter % folds;
    ++counter;
  }
  return fold;
}

EvalResult cross_validate(const std::vector<Vec>& vectors,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& ids, int folds,
                          double reg, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cross_validate: k must be >= 2");
  if (vectors.size() != labels.size() || vectors.size() != ids.size() ||
      vectors.empty()) {
    throw std::invalid_argument("cross_validate: inconsistent inputs");
  }

  std::vector<int> fold = fold_assignment(labels, ids, folds);

  std::set<std::string> cats(labels.begin(), labels.end());
  std::vector<std::string> categories(cats.begin(), cats.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < categories.size(); ++i) index[categories[i]] = i;
  std::vector<CategoryCounts> counts(categories.size());

  for (int f = 0; f < folds; ++f) {
    std::vector<Vec> train_vecs;
    std::vector<std::string> train_labels;
    std::vector<std::size_t> held_out;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (fold[i] == f) {
        held_out.push_back(i);
      } else {
        train_vecs.push_back(vectors[i]);
        train_labels.push_back(labels[i]);
      }
    }
    if (held_out.empty()) continue;

    std::set<std::string> train_cats(train_labels.begin(), train_labels.end());
    std::vector<std::string> predictions;
    if (train_cats.size() >= 2) {
      LinearModel model = train(train_vecs, train_labels, reg, seed);
      for (std::size_t i : held_out) predictions.push_back(predict(model, vectors[i]));
    } else {
      // degenerate fold: too few categories left to fit a separator
      std::string only = train_cats.empty() ? labels[held_out.front()]
                                            : *train_cats.begin();
      predictions.assign(held_out.size(), only);
    }
    for (std::size_t j = 0; j < held_out.size(); ++j) {
      const std::string& gold = labels[held_out[j]];
      const std::string& pred = predictions[j];
      if (pred == gold) {
        ++counts[index[gold]].tp;
      } else {
        ++counts[index[pred]].fp;
        ++counts[index[gold]].fn;
      }
    }
  }
  return eval_from_counts(std::move(categories), std::move(counts));
}

}  // namespace keyvec
