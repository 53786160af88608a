#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace keyvec {

/// Collapsed POS classes driving the phrase automaton.
/// JJ/JJR/JJS -> J, NN/NNS/NNP/NNPS -> N, IN -> I, everything else -> O.
enum class TagClass : char {
  adjective = 'J',
  noun = 'N',
  preposition = 'I',
  other = 'O',
};

TagClass tag_class(std::string_view pos);

struct TaggedToken {
  std::string surface;
  std::string pos;
  TagClass cls = TagClass::other;
};

using Sentence = std::vector<TaggedToken>;

enum class TagMode { pretagged, heuristic };

/// Splits raw text into sentences of tagged tokens. Pretagged mode expects
/// whitespace-separated "token_TAG" items; heuristic mode applies a small
/// built-in lexicon plus suffix/capitalization rules. Sentences end at
/// newlines and at terminal punctuation (. ! ?).
std::vector<Sentence> tag_text(std::string_view raw, TagMode mode);

constexpr std::size_t kMaxPhraseLen = 5;

struct Phrase {
  std::vector<TaggedToken> tokens;

  std::string pattern() const;               // class sequence, e.g. "JNIN"
  std::string joined(char sep = ' ') const;  // surfaces joined by sep
  std::vector<std::string> surfaces() const;
};

/// True iff the class sequence is accepted by the phrase automaton:
/// starts with J or N, never has two consecutive I, ends with N, and is
/// at most kMaxPhraseLen long.
bool accepts_pattern(std::string_view classes);

/// Emits every contiguous span (length 1..5) whose class sequence the
/// automaton accepts. Overlapping spans are all kept; repeats count
/// (multiset semantics).
std::vector<Phrase> extract_phrases(const Sentence& sentence);

/// All phrases of a whole document, sentence by sentence.
std::vector<Phrase> extract_phrases(const std::vector<Sentence>& sentences);

}  // namespace keyvec
