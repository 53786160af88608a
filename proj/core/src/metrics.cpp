#include "keyvec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace keyvec {

namespace {

struct NamedKind {
  const char* name;
  MetricKind kind;
};

const NamedKind kKinds[] = {
    {"rf", {BaseMetric::rf, false}},
    {"tf-rf", {BaseMetric::rf, true}},
    {"tds", {BaseMetric::tds, false}},
    {"tf-tds", {BaseMetric::tds, true}},
    {"ig", {BaseMetric::ig, false}},
    {"tf-ig", {BaseMetric::ig, true}},
    {"gr", {BaseMetric::gr, false}},
    {"chi2", {BaseMetric::chi2, false}},
    {"tf-chi2", {BaseMetric::chi2, true}},
    {"idf", {BaseMetric::idf, false}},
    {"tf-idf", {BaseMetric::idf, true}},
    {"tf-dcf", {BaseMetric::tf_dcf, false}},
    {"tf-tf-dcf", {BaseMetric::tf_dcf, true}},
    {"thd", {BaseMetric::thd, false}},
    {"tf-thd", {BaseMetric::thd, true}},
};

}  // namespace

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const NamedKind& nk : kKinds) v.push_back(nk.name);
    return v;
  }();
  return names;
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  for (const NamedKind& nk : kKinds) {
    if (name == nk.name) return nk.kind;
  }
  return std::nullopt;
}

std::string metric_name(MetricKind kind) {
  for (const NamedKind& nk : kKinds) {
    if (nk.kind == kind) return nk.name;
  }
  throw std::invalid_argument("unnamed metric kind");
}

bool is_chi2_family(MetricKind kind) { return kind.base == BaseMetric::chi2; }

double rf_value(const AbcdStats& t) {
  return std::log2(2.0 + double(t.a) / double(std::max(t.c, 1LL)));
}

double tds_value(const AbcdStats& t) {
  if (t.a + t.c == 0) return 0.0;
  return (double(t.a) / double(t.a + t.b)) /
         (double(t.a + t.c) / double(t.n()));
}

double ig_value(const AbcdStats& t) {
  const double n = double(t.n());
  const double cells[4] = {double(t.a), double(t.b), double(t.c), double(t.d)};
  const double rows[4] = {double(t.a + t.b), double(t.a + t.b),
                          double(t.c + t.d), double(t.c + t.d)};
  const double cols[4] = {double(t.a + t.c), double(t.b + t.d),
                          double(t.a + t.c), double(t.b + t.d)};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (cells[i] <= 0.0) continue;  // zero cells contribute nothing
    sum += cells[i] / n * std::log2(cells[i] * n / (rows[i] * cols[i]));
  }
  return sum;
}

double gr_value(const AbcdStats& t) {
  const double n = double(t.n());
  double h = 0.0;
  for (double part : {double(t.a + t.b), double(t.c + t.d)}) {
    if (part <= 0.0) continue;
    h -= part / n * std::log2(part / n);
  }
  if (h == 0.0) return 0.0;
  return ig_value(t) / h;
}

double chi2_value(const AbcdStats& t) {
  const double row1 = double(t.a + t.b), row2 = double(t.c + t.d);
  const double col1 = double(t.a + t.c), col2 = double(t.b + t.d);
  if (row1 == 0.0 || row2 == 0.0 || col1 == 0.0 || col2 == 0.0) return 0.0;
  const double det = double(t.a) * double(t.d) - double(t.b) * double(t.c);
  return double(t.n()) * det * det / (row1 * row2 * col1 * col2);
}

double idf_value(const AbcdStats& t) {
  if (t.a + t.c == 0) return 0.0;
  return std::log2(double(t.n()) / double(t.a + t.c));
}

double tf_dcf_value(long long tf_in_category,
                    std::span<const long long> tf_other_categories) {
  double denom = 1.0;
  for (long long tf : tf_other_categories) {
    denom *= 1.0 + std::log2(1.0 + double(tf));
  }
  return double(tf_in_category) / denom;
}

double thd_value(long long rank_cat, long long vocab_cat, long long rank_global,
                 long long vocab_global) {
  double local = vocab_cat > 0 ? double(rank_cat) / double(vocab_cat) : 0.0;
  double global = vocab_global > 0 ? double(rank_global) / double(vocab_global) : 0.0;
  return local - global;
}

double metric_value(BaseMetric base, const std::string& word,
                    const std::string& category, const CorpusStats& stats) {
  switch (base) {
    case BaseMetric::rf:
      return rf_value(stats.abcd(word, category));
    case BaseMetric::tds:
      return tds_value(stats.abcd(word, category));
    case BaseMetric::ig:
      return ig_value(stats.abcd(word, category));
    case BaseMetric::gr:
      return gr_value(stats.abcd(word, category));
    case BaseMetric::chi2:
      return chi2_value(stats.abcd(word, category));
    case BaseMetric::idf:
      return idf_value(stats.abcd(word, category));
    case BaseMetric::tf_dcf: {
      std::size_t ci = stats.category_index(category);
      std::vector<long long> tf = stats.cat_tf_all(word);
      long long own = tf[ci];
      tf.erase(tf.begin() + std::ptrdiff_t(ci));
      return tf_dcf_value(own, tf);
    }
    case BaseMetric::thd:
      return thd_value(stats.rank_cat(word, category),
                       stats.vocab_size_cat(category), stats.rank_global(word),
                       stats.vocab_size_global());
  }
  throw std::logic_error("unreachable metric kind");
}

double word_score(const std::string& word, int doc_tf, MetricKind kind,
                  const CorpusStats& stats) {
  if (doc_tf < 0) throw std::invalid_argument("word_score: negative doc_tf");
  double base;
  if (kind.base == BaseMetric::idf) {
    base = metric_value(BaseMetric::idf, word, stats.categories().front(), stats);
  } else {
    base = metric_value(kind.base, word, stats.categories().front(), stats);
    for (std::size_t ci = 1; ci < stats.categories().size(); ++ci) {
      base = std::max(base, metric_value(kind.base, word,
                                         stats.categories()[ci], stats));
    }
  }
  return kind.tf_scaled ? base * double(doc_tf) : base;
}

}  // namespace keyvec
