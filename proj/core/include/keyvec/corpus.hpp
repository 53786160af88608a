#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "keyvec/embedding.hpp"

namespace keyvec {

enum class Split { train, test };

std::string split_name(Split s);

struct Document {
  std::string id;  // "<category>/<filename>"
  std::string category;
  std::string content;
  bool pretagged = false;  // true for ".tagged" files
  Split split = Split::train;
};

struct LabeledCorpus {
  std::vector<Document> docs;  // ordered by (split, id)
  std::vector<std::string> categories;

  std::vector<const Document*> split_docs(Split s) const;
};

using WarningSink = std::function<void(const std::string&)>;

/// Loads a corpus laid out as root/{train,test}/<category>/<file>. Files
/// ending in ".tagged" are marked pretagged. Invalid UTF-8 bytes are
/// replaced with U+FFFD and reported through `warn`.
LabeledCorpus load_corpus(const std::filesystem::path& root,
                          const WarningSink& warn = {});

/// One "token<TAB>count" per line; duplicate tokens are summed.
FrequencyList load_frequency_list(const std::filesystem::path& path);

/// Replaces invalid UTF-8 sequences with U+FFFD; reports how many bytes
/// were replaced through `replaced` when non-null.
std::string sanitize_utf8(const std::string& bytes,
                          std::size_t* replaced = nullptr);

}  // namespace keyvec
