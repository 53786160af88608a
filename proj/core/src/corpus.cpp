#include "keyvec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace keyvec {

namespace fs = std::filesystem;

std::string split_name(Split s) { return s == Split::train ? "train" : "test"; }

std::vector<const Document*> LabeledCorpus::split_docs(Split s) const {
  std::vector<const Document*> out;
  for (const Document& d : docs) {
    if (d.split == s) out.push_back(&d);
  }
  return out;
}

std::string sanitize_utf8(const std::string& bytes, std::size_t* replaced) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t bad = 0;
  std::size_t i = 0;
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();

  auto is_cont = [&](std::size_t j) {
    return j < n && (data[j] & 0xC0) == 0x80;
  };

  while (i < n) {
    unsigned char b = data[i];
    std::size_t len = 0;
    if (b < 0x80) {
      len = 1;
    } else if ((b & 0xE0) == 0xC0 && b >= 0xC2) {
      len = 2;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
    } else if ((b & 0xF8) == 0xF0 && b <= 0xF4) {
      len = 4;
    }
    bool ok = len > 0;
    for (std::size_t j = 1; ok && j < len; ++j) ok = is_cont(i + j);
    if (ok && len == 3) {
      // reject surrogates and overlong forms
      unsigned cp = ((b & 0x0F) << 12) | ((data[i + 1] & 0x3F) << 6) |
                    (data[i + 2] & 0x3F);
      ok = cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF);
    }
    if (ok && len == 4) {
      unsigned cp = ((b & 0x07) << 18) | ((data[i + 1] & 0x3F) << 12) |
                    ((data[i + 2] & 0x3F) << 6) | (data[i + 3] & 0x3F);
      ok = cp >= 0x10000 && cp <= 0x10FFFF;
    }
    if (ok) {
      out.append(bytes, i, len);
      i += len;
    } else {
      out += "\xEF\xBF\xBD";  // U+FFFD
      ++bad;
      ++i;
    }
  }
  if (replaced) *replaced = bad;
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

LabeledCorpus load_corpus(const fs::path& root, const WarningSink& warn) {
  auto note = [&](const std::string& msg) {
    if (warn) warn(msg);
  };

  LabeledCorpus corpus;
  std::set<std::string> categories;
  std::set<std::string> seen_ids;

  for (Split split : {Split::train, Split::test}) {
    fs::path split_dir = root / split_name(split);
    if (!fs::is_directory(split_dir)) {
      throw std::runtime_error("missing split directory: " + split_dir.string());
    }
    std::vector<fs::path> cat_dirs;
    for (const auto& entry : fs::directory_iterator(split_dir)) {
      if (entry.is_directory()) cat_dirs.push_back(entry.path());
    }
    std::sort(cat_dirs.begin(), cat_dirs.end());
    for (const fs::path& cat_dir : cat_dirs) {
      std::string category = cat_dir.filename().string();
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(cat_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      if (files.empty()) {
        note("empty category directory: " + cat_dir.string());
        continue;
      }
      std::sort(files.begin(), files.end());
      categories.insert(category);
      for (const fs::path& file : files) {
        Document doc;
        doc.category = category;
        doc.id = category + "/" + file.filename().string();
        doc.split = split;
        doc.pretagged = file.extension() == ".tagged";
        if (!seen_ids.insert(doc.id).second) {
          throw std::runtime_error("duplicate id: " + doc.id);
        }
        std::size_t replaced = 0;
        doc.content = sanitize_utf8(read_file(file), &replaced);
        if (replaced > 0) {
          note("replaced " + std::to_string(replaced) +
               " invalid UTF-8 byte(s) in " + doc.id);
        }
        corpus.docs.push_back(std::move(doc));
      }
    }
  }

  std::sort(corpus.docs.begin(), corpus.docs.end(),
            [](const Document& a, const Document& b) {
              if (a.split != b.split) return a.split < b.split;
              return a.id < b.id;
            });
  corpus.categories.assign(categories.begin(), categories.end());
  return corpus;
}

FrequencyList load_frequency_list(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  FrequencyList freq;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw std::runtime_error("frequency list parse error at line " +
                               std::to_string(line_no) +
                               ": expected token<TAB>count");
    }
    std::string token = line.substr(0, tab);
    std::string count_text = line.substr(tab + 1);
    if (count_text.empty() ||
        count_text.find_first_not_of("0123456789") != std::string::npos) {
      throw std::runtime_error("frequency list parse error at line " +
                               std::to_string(line_no) +
                               ": count is not a non-negative integer");
    }
    freq[token] += std::stoull(count_text);
  }
  return freq;
}

}  // namespace keyvec
