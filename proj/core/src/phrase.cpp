#include "keyvec/phrase.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace keyvec {

TagClass tag_class(std::string_view pos) {
  if (pos == "JJ" || pos == "JJR" || pos == "JJS") return TagClass::adjective;
  if (pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "NNPS")
    return TagClass::noun;
  if (pos == "IN") return TagClass::preposition;
  return TagClass::other;
}

namespace {

bool is_terminal_punct(std::string_view s) {
  return s == "." || s == "!" || s == "?";
}

// Majority tags for frequent closed-class and common words. Anything not
// found here falls through to the suffix and capitalization rules.
const std::unordered_map<std::string_view, std::string_view>& tag_lexicon() {
  static const std::unordered_map<std::string_view, std::string_view> lex = {
      // prepositions / subordinating conjunctions
      {"of", "IN"},      {"in", "IN"},      {"on", "IN"},      {"at", "IN"},
      {"by", "IN"},      {"for", "IN"},     {"with", "IN"},    {"from", "IN"},
      {"as", "IN"},      {"than", "IN"},    {"into", "IN"},    {"onto", "IN"},
      {"over", "IN"},    {"under", "IN"},   {"between", "IN"}, {"among", "IN"},
      {"through", "IN"}, {"during", "IN"},  {"without", "IN"}, {"within", "IN"},
      {"against", "IN"}, {"about", "IN"},   {"across", "IN"},  {"behind", "IN"},
      {"beyond", "IN"},  {"near", "IN"},    {"toward", "IN"},  {"towards", "IN"},
      {"upon", "IN"},    {"after", "IN"},   {"before", "IN"},  {"since", "IN"},
      {"until", "IN"},   {"per", "IN"},     {"via", "IN"},     {"that", "IN"},
      // determiners
      {"the", "DT"},     {"a", "DT"},       {"an", "DT"},      {"this", "DT"},
      {"these", "DT"},   {"those", "DT"},   {"each", "DT"},    {"every", "DT"},
      {"some", "DT"},    {"any", "DT"},     {"no", "DT"},      {"both", "DT"},
      {"either", "DT"},  {"neither", "DT"},
      // conjunctions
      {"and", "CC"},     {"or", "CC"},      {"but", "CC"},     {"nor", "CC"},
      // pronouns
      {"i", "PRP"},      {"you", "PRP"},    {"he", "PRP"},     {"she", "PRP"},
      {"it", "PRP"},     {"we", "PRP"},     {"they", "PRP"},   {"me", "PRP"},
      {"him", "PRP"},    {"her", "PRP"},    {"us", "PRP"},     {"them", "PRP"},
      {"my", "PRP$"},    {"your", "PRP$"},  {"his", "PRP$"},   {"its", "PRP$"},
      {"our", "PRP$"},   {"their", "PRP$"},
      // modals and frequent verbs
      {"will", "MD"},    {"would", "MD"},   {"can", "MD"},     {"could", "MD"},
      {"shall", "MD"},   {"should", "MD"},  {"may", "MD"},     {"might", "MD"},
      {"must", "MD"},    {"be", "VB"},      {"is", "VBZ"},     {"are", "VBP"},
      {"was", "VBD"},    {"were", "VBD"},   {"been", "VBN"},   {"being", "VBG"},
      {"have", "VBP"},   {"has", "VBZ"},    {"had", "VBD"},    {"do", "VBP"},
      {"does", "VBZ"},   {"did", "VBD"},    {"go", "VB"},      {"goes", "VBZ"},
      {"went", "VBD"},   {"make", "VB"},    {"made", "VBD"},   {"get", "VB"},
      {"got", "VBD"},    {"say", "VB"},     {"said", "VBD"},   {"see", "VB"},
      {"take", "VB"},    {"barked", "VBD"},
      // adverbs
      {"not", "RB"},     {"very", "RB"},    {"also", "RB"},    {"too", "RB"},
      {"quite", "RB"},   {"rather", "RB"},  {"always", "RB"},  {"never", "RB"},
      {"often", "RB"},   {"only", "RB"},
      // frequent adjectives
      {"good", "JJ"},    {"bad", "JJ"},     {"new", "JJ"},     {"old", "JJ"},
      {"big", "JJ"},     {"small", "JJ"},   {"large", "JJ"},   {"great", "JJ"},
      {"high", "JJ"},    {"low", "JJ"},     {"long", "JJ"},    {"short", "JJ"},
      {"same", "JJ"},    {"different", "JJ"}, {"important", "JJ"},
      {"early", "JJ"},   {"late", "JJ"},    {"young", "JJ"},   {"strong", "JJ"},
      {"free", "JJ"},    {"full", "JJ"},    {"red", "JJ"},     {"green", "JJ"},
      {"blue", "JJ"},    {"black", "JJ"},   {"white", "JJ"},   {"hot", "JJ"},
      {"cold", "JJ"},
      // frequent nouns
      {"time", "NN"},    {"year", "NN"},    {"people", "NNS"}, {"way", "NN"},
      {"day", "NN"},     {"man", "NN"},     {"world", "NN"},   {"life", "NN"},
      {"hand", "NN"},    {"part", "NN"},    {"child", "NN"},   {"eye", "NN"},
      {"woman", "NN"},   {"place", "NN"},   {"work", "NN"},    {"week", "NN"},
      {"case", "NN"},    {"point", "NN"},   {"company", "NN"}, {"number", "NN"},
      {"group", "NN"},   {"problem", "NN"}, {"fact", "NN"},    {"dog", "NN"},
      {"cat", "NN"},     {"war", "NN"},     {"home", "NN"},    {"water", "NN"},
      {"room", "NN"},    {"area", "NN"},    {"money", "NN"},   {"story", "NN"},
      {"to", "TO"},      {"which", "WDT"},  {"what", "WP"},    {"who", "WP"},
  };
  return lex;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string heuristic_tag(std::string_view word, bool sentence_initial) {
  const auto& lex = tag_lexicon();
  if (auto it = lex.find(to_lower(word)); it != lex.end()) {
    return std::string(it->second);
  }
  if (ends_with(word, "ous") || ends_with(word, "ful") || ends_with(word, "ive"))
    return "JJ";
  if (ends_with(word, "tion") || ends_with(word, "ness") || ends_with(word, "ment"))
    return "NN";
  if (!sentence_initial && !word.empty() &&
      std::isupper(static_cast<unsigned char>(word.front()))) {
    return "NN";
  }
  return "XX";
}

TaggedToken make_token(std::string surface, std::string pos) {
  TaggedToken t;
  t.cls = tag_class(pos);
  t.surface = std::move(surface);
  t.pos = std::move(pos);
  return t;
}

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<Sentence> tag_text(std::string_view raw, TagMode mode) {
  std::vector<Sentence> sentences;
  Sentence current;
  bool seen_word = false;  // a real word token in the current sentence

  auto close_sentence = [&] {
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
    seen_word = false;
  };

  std::size_t position = 0;  // 1-based token ordinal for error reporting
  std::istringstream lines{std::string(raw)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream items(line);
    std::string item;
    while (items >> item) {
      ++position;
      if (mode == TagMode::pretagged) {
        auto sep = item.rfind('_');
        if (sep == std::string::npos || sep == 0 || sep + 1 == item.size()) {
          throw std::runtime_error("parse error at token " +
                                   std::to_string(position) + ": \"" + item +
                                   "\" lacks _TAG suffix");
        }
        std::string surface = item.substr(0, sep);
        std::string pos = item.substr(sep + 1);
        current.push_back(make_token(surface, pos));
        if (is_terminal_punct(surface) || pos == ".") close_sentence();
      } else {
        // peel leading/trailing punctuation into separate other-class tokens
        std::size_t begin = 0, end = item.size();
        while (begin < end && is_ascii_punct(item[begin])) ++begin;
        while (end > begin && is_ascii_punct(item[end - 1])) --end;
        for (std::size_t i = 0; i < begin; ++i) {
          std::string p(1, item[i]);
          current.push_back(make_token(p, p));
          if (is_terminal_punct(current.back().surface)) close_sentence();
        }
        if (begin < end) {
          std::string word = item.substr(begin, end - begin);
          current.push_back(make_token(word, heuristic_tag(word, !seen_word)));
          seen_word = true;
        }
        for (std::size_t i = end; i < item.size(); ++i) {
          std::string p(1, item[i]);
          current.push_back(make_token(p, p));
          if (is_terminal_punct(current.back().surface)) close_sentence();
        }
      }
    }
    close_sentence();  // newline ends a sentence
  }
  close_sentence();
  return sentences;
}

std::string Phrase::pattern() const {
  std::string p;
  p.reserve(tokens.size());
  for (const TaggedToken& t : tokens) p.push_back(char(t.cls));
  return p;
}

std::string Phrase::joined(char sep) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(sep);
    out += tokens[i].surface;
  }
  return out;
}

std::vector<std::string> Phrase::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const TaggedToken& t : tokens) out.push_back(t.surface);
  return out;
}

namespace {

enum class FsmState { start, after_content, after_prep, dead };

FsmState step(FsmState s, char cls) {
  switch (s) {
    case FsmState::start:
      return (cls == 'J' || cls == 'N') ? FsmState::after_content
                                        : FsmState::dead;
    case FsmState::after_content:
      if (cls == 'J' || cls == 'N') return FsmState::after_content;
      if (cls == 'I') return FsmState::after_prep;
      return FsmState::dead;
    case FsmState::after_prep:
      return (cls == 'J' || cls == 'N') ? FsmState::after_content
                                        : FsmState::dead;
    case FsmState::dead:
      return FsmState::dead;
  }
  return FsmState::dead;
}

}  // namespace

bool accepts_pattern(std::string_view classes) {
  if (classes.empty() || classes.size() > kMaxPhraseLen) return false;
  FsmState state = FsmState::start;
  for (char c : classes) {
    state = step(state, c);
    if (state == FsmState::dead) return false;
  }
  return state == FsmState::after_content && classes.back() == 'N';
}

std::vector<Phrase> extract_phrases(const Sentence& sentence) {
  std::vector<Phrase> phrases;
  const std::size_t n = sentence.size();
  for (std::size_t i = 0; i < n; ++i) {
    FsmState state = FsmState::start;
    std::size_t max_len = std::min(kMaxPhraseLen, n - i);
    for (std::size_t len = 1; len <= max_len; ++len) {
      char cls = char(sentence[i + len - 1].cls);
      state = step(state, cls);
      if (state == FsmState::dead) break;
      if (state == FsmState::after_content && cls == 'N') {
        Phrase p;
        p.tokens.assign(sentence.begin() + std::ptrdiff_t(i),
                        sentence.begin() + std::ptrdiff_t(i + len));
        phrases.push_back(std::move(p));
      }
    }
  }
  return phrases;
}

std::vector<Phrase> extract_phrases(const std::vector<Sentence>& sentences) {
  std::vector<Phrase> all;
  for (const Sentence& s : sentences) {
    auto part = extract_phrases(s);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace keyvec
