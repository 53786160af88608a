#include "keyvec/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace keyvec {

double dot(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += double(a[i]) * double(b[i]);
  return sum;
}

double norm(std::span<const float> v) { return std::sqrt(dot(v, v)); }

void normalize(Vec& v) {
  double n = norm(v);
  if (n == 0.0) return;
  for (float& x : v) x = float(x / n);
}

namespace {

[[noreturn]] void load_error(const std::string& what) {
  throw std::runtime_error("model load error: " + what);
}

void read_header(std::istream& in, std::size_t& count, std::size_t& dim) {
  std::string line;
  if (!std::getline(in, line)) load_error("malformed header: empty file");
  std::istringstream hs(line);
  long long c = -1, d = -1;
  if (!(hs >> c >> d) || c < 0 || d <= 0) {
    load_error("malformed header: expected \"<count> <dim>\", got \"" + line + "\"");
  }
  std::string extra;
  if (hs >> extra) load_error("malformed header: trailing data \"" + extra + "\"");
  count = std::size_t(c);
  dim = std::size_t(d);
}

float load_f32_le(const unsigned char* p) {
  std::uint32_t u = std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
                    std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
  return std::bit_cast<float>(u);
}

void store_f32_le(float f, unsigned char* p) {
  std::uint32_t u = std::bit_cast<std::uint32_t>(f);
  p[0] = u & 0xff;
  p[1] = (u >> 8) & 0xff;
  p[2] = (u >> 16) & 0xff;
  p[3] = (u >> 24) & 0xff;
}

}  // namespace

void EmbeddingModel::insert_row(const std::string& token, Vec vec) {
  if (vec.size() != dim_) {
    load_error("dimension mismatch at token " + token);
  }
  if (index_.contains(token)) {
    load_error("duplicate token " + token);
  }
  if (norm(vec) == 0.0) {
    load_error("zero-norm vector at token " + token);
  }
  normalize(vec);
  index_.emplace(token, tokens_.size());
  tokens_.push_back(token);
  data_.insert(data_.end(), vec.begin(), vec.end());
}

EmbeddingModel EmbeddingModel::load(const std::string& path,
                                    ModelFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) load_error("cannot open " + path);

  std::size_t count = 0;
  EmbeddingModel model;

  if (format == ModelFormat::text) {
    read_header(in, count, model.dim_);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      if (line.empty() && in.peek() == EOF) break;  // trailing newline
      std::istringstream ls(line);
      std::string token;
      if (!(ls >> token)) load_error("blank row at entry " + std::to_string(rows + 1));
      Vec vec;
      double x;
      while (ls >> x) vec.push_back(float(x));
      model.insert_row(token, std::move(vec));
      ++rows;
    }
    if (rows < count) load_error("truncated model");
    if (rows > count) load_error("header declares " + std::to_string(count) +
                                 " tokens but file has " + std::to_string(rows));
  } else {
    read_header(in, count, model.dim_);
    for (std::size_t r = 0; r < count; ++r) {
      std::string token;
      char ch;
      while (in.get(ch) && ch != ' ') token.push_back(ch);
      if (!in) load_error("truncated model");
      std::vector<unsigned char> raw(model.dim_ * 4);
      in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
      if (std::size_t(in.gcount()) != raw.size()) load_error("truncated model");
      Vec vec(model.dim_);
      for (std::size_t i = 0; i < model.dim_; ++i) vec[i] = load_f32_le(&raw[i * 4]);
      if (in.peek() == '\n') in.get();
      model.insert_row(token, std::move(vec));
    }
  }
  return model;
}

EmbeddingModel EmbeddingModel::from_rows(
    const std::vector<std::pair<std::string, Vec>>& rows) {
  EmbeddingModel model;
  if (rows.empty()) load_error("empty model");
  model.dim_ = rows.front().second.size();
  if (model.dim_ == 0) load_error("malformed header: zero dimension");
  for (const auto& [token, vec] : rows) model.insert_row(token, vec);
  return model;
}

bool EmbeddingModel::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

std::optional<std::size_t> EmbeddingModel::index_of(
    std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingModel::vector_at(std::size_t index) const {
  return {data_.data() + index * dim_, dim_};
}

std::optional<std::span<const float>> EmbeddingModel::vector_of(
    std::string_view token) const {
  auto idx = index_of(token);
  if (!idx) return std::nullopt;
  return vector_at(*idx);
}

void EmbeddingModel::save_text(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << size() << ' ' << dim_ << '\n';
  out.precision(std::numeric_limits<float>::max_digits10);
  for (std::size_t r = 0; r < size(); ++r) {
    out << tokens_[r];
    auto row = vector_at(r);
    for (float x : row) out << ' ' << x;
    out << '\n';
  }
}

void EmbeddingModel::save_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << size() << ' ' << dim_ << '\n';
  unsigned char buf[4];
  for (std::size_t r = 0; r < size(); ++r) {
    out << tokens_[r] << ' ';
    for (float x : vector_at(r)) {
      store_f32_le(x, buf);
      out.write(reinterpret_cast<const char*>(buf), 4);
    }
    out.put('\n');
  }
}

CroppedVocab crop(const EmbeddingModel& model, const FrequencyList& freq,
                  std::size_t size) {
  if (size == 0) throw std::invalid_argument("crop size must be positive");
  if (freq.empty()) throw std::invalid_argument("frequency list is empty");

  struct Entry {
    std::uint64_t count;
    std::string_view token;
    std::size_t row;
  };
  std::vector<Entry> entries;
  for (const auto& [token, count] : freq) {
    if (auto row = model.index_of(token)) {
      entries.push_back({count, token, *row});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  if (entries.size() > size) entries.resize(size);

  CroppedVocab vocab;
  vocab.target_size = size;
  vocab.members.reserve(entries.size());
  for (const Entry& e : entries) vocab.members.push_back(e.row);
  std::sort(vocab.members.begin(), vocab.members.end(),
            [&](std::size_t a, std::size_t b) {
              return model.tokens()[a] < model.tokens()[b];
            });
  return vocab;
}

std::vector<std::pair<std::string, double>> nearest_words(
    const EmbeddingModel& model, const CroppedVocab& vocab,
    std::span<const float> query, std::size_t k) {
  if (k == 0) throw std::invalid_argument("nearest_words: K must be >= 1");
  double qn = norm(query);
  if (qn == 0.0) throw std::invalid_argument("nearest_words: zero query vector");

  struct Hit {
    double sim;
    std::size_t row;
  };
  std::vector<Hit> hits;
  hits.reserve(vocab.members.size());
  for (std::size_t row : vocab.members) {
    hits.push_back({dot(query, model.vector_at(row)) / qn, row});
  }
  std::size_t take = std::min(k, hits.size());
  auto better = [&](const Hit& a, const Hit& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return model.tokens()[a.row] < model.tokens()[b.row];
  };
  std::partial_sort(hits.begin(), hits.begin() + std::ptrdiff_t(take),
                    hits.end(), better);

  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.emplace_back(model.tokens()[hits[i].row], hits[i].sim);
  }
  return out;
}

}  // namespace keyvec
