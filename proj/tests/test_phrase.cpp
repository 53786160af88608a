#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "keyvec/phrase.hpp"
#include "oracles.hpp"

using keyvec::Sentence;
using keyvec::TagClass;
using keyvec::TaggedToken;

namespace {

Sentence sentence_from_classes(const std::string& classes) {
  Sentence s;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    TaggedToken t;
    t.surface = std::string(1, char('a' + i % 26)) + std::to_string(i);
    switch (classes[i]) {
      case 'J': t.pos = "JJ"; break;
      case 'N': t.pos = "NN"; break;
      case 'I': t.pos = "IN"; break;
      default: t.pos = "VB"; break;
    }
    t.cls = keyvec::tag_class(t.pos);
    s.push_back(std::move(t));
  }
  return s;
}

std::multiset<std::string> phrase_strings(const std::vector<keyvec::Phrase>& ps) {
  std::multiset<std::string> out;
  for (const keyvec::Phrase& p : ps) out.insert(p.joined());
  return out;
}

}  // namespace

TEST_CASE("tag classes collapse Penn labels") {
  for (const char* pos : {"JJ", "JJR", "JJS"}) CHECK(keyvec::tag_class(pos) == TagClass::adjective);
  for (const char* pos : {"NN", "NNS", "NNP", "NNPS"}) CHECK(keyvec::tag_class(pos) == TagClass::noun);
  CHECK(keyvec::tag_class("IN") == TagClass::preposition);
  for (const char* pos : {"VB", "VBD", "DT", "RB", ".", "XX", "PRP"}) CHECK(keyvec::tag_class(pos) == TagClass::other);
}

TEST_CASE("automaton agrees with the pattern grammar on all 363 sequences") {
  const char alphabet[3] = {'J', 'N', 'I'};
  int checked = 0;
  for (int len = 1; len <= 5; ++len) {
    int combos = 1;
    for (int i = 0; i < len; ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      std::string classes;
      int c = code;
      for (int i = 0; i < len; ++i) {
        classes.push_back(alphabet[c % 3]);
        c /= 3;
      }
      CAPTURE(classes);
      CHECK(keyvec::accepts_pattern(classes) == oracles::grammar_accepts(classes));
      ++checked;
    }
  }
  CHECK(checked == 363);
}

TEST_CASE("every multiword pattern from the pattern table is accepted") {
  for (const char* pattern :
       {"N",     "JN",    "NN",    "JIN",   "JJN",   "JNN",   "NIN",  "NJN",
        "JIJN",  "JINN",  "JJJN",  "JJNN",  "NINN",  "NJJN",  "JIJIN",
        "JIJJN", "JIJNN", "JININ", "JINNN", "JJIJN", "JJINN", "JJJIN",
        "JJJJN", "JJJNN", "JJNIN", "JJNJN", "JJNNN", "JNIJN", "JNINN",
        "JNJIN", "JNJJN", "JNNIN", "JNNJN", "JNNNN", "NIJIN", "NIJJN",
        "NIJNN", "NININ", "NINJN", "NINNN", "NJIJN", "NJJIN", "NJJJN",
        "NJJNN", "NJNIN", "NNIJN", "NNINN", "NNJIN", "NNJJN", "NNNIN",
        "NNNNN"}) {
    CAPTURE(pattern);
    CHECK(keyvec::accepts_pattern(pattern));
  }
  for (const char* pattern : {"IIN", "NIIN", "JII", "NI", "JNI", "I", "J", "JJ",
                              "NNNNNN", "NINJNN"}) {
    CAPTURE(pattern);
    CHECK_FALSE(keyvec::accepts_pattern(pattern));
  }
}

TEST_CASE("span extraction on the worked example") {
  // the big red dog of war barked -> O J J N I N O
  Sentence s;
  for (auto [surface, pos] : std::initializer_list<std::pair<const char*, const char*>>{
           {"the", "DT"}, {"big", "JJ"}, {"red", "JJ"}, {"dog", "NN"},
           {"of", "IN"}, {"war", "NN"}, {"barked", "VBD"}}) {
    TaggedToken t{surface, pos, keyvec::tag_class(pos)};
    s.push_back(t);
  }
  auto phrases = keyvec::extract_phrases(s);
  CHECK(phrases.size() == 7);
  CHECK(phrase_strings(phrases) ==
        std::multiset<std::string>{"dog", "war", "red dog", "big red dog",
                                   "dog of war", "red dog of war",
                                   "big red dog of war"});
}

TEST_CASE("leading preposition is rejected, other-only sentences are empty") {
  Sentence of_war;
  of_war.push_back({"of", "IN", TagClass::preposition});
  of_war.push_back({"war", "NN", TagClass::noun});
  CHECK(phrase_strings(keyvec::extract_phrases(of_war)) ==
        std::multiset<std::string>{"war"});

  Sentence all_other = sentence_from_classes("OOOO");
  CHECK(keyvec::extract_phrases(all_other).empty());
}

TEST_CASE("extraction equals brute-force span enumeration on random input") {
  std::mt19937_64 rng(4242);
  const char alphabet[4] = {'J', 'N', 'I', 'O'};
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t len = 1 + rng() % 14;
    std::string classes;
    for (std::size_t i = 0; i < len; ++i) classes.push_back(alphabet[rng() % 4]);
    Sentence s = sentence_from_classes(classes);
    auto phrases = keyvec::extract_phrases(s);
    auto spans = oracles::enumerate_spans(classes);
    REQUIRE(phrases.size() == spans.size());
    CHECK(phrases.size() <= 5 * len);
    std::multiset<std::string> got = phrase_strings(phrases);
    std::multiset<std::string> want;
    for (auto [start, count] : spans) {
      std::string joined;
      for (std::size_t i = start; i < start + count; ++i) {
        if (!joined.empty()) joined += ' ';
        joined += s[i].surface;
      }
      want.insert(joined);
    }
    CHECK(got == want);
  }
}

TEST_CASE("pretagged parsing") {
  auto sentences = keyvec::tag_text("dog_NN barked_VBD", keyvec::TagMode::pretagged);
  REQUIRE(sentences.size() == 1);
  REQUIRE(sentences[0].size() == 2);
  CHECK(sentences[0][0].surface == "dog");
  CHECK(sentences[0][0].pos == "NN");
  CHECK(sentences[0][0].cls == TagClass::noun);
  CHECK(sentences[0][1].cls == TagClass::other);

  // underscores inside the surface keep only the last separator
  auto nyc = keyvec::tag_text("New_York_NNP", keyvec::TagMode::pretagged);
  CHECK(nyc[0][0].surface == "New_York");
  CHECK(nyc[0][0].pos == "NNP");

  CHECK(keyvec::tag_text("", keyvec::TagMode::pretagged).empty());

  CHECK_THROWS_WITH_AS(
      keyvec::tag_text("dog_NN barked", keyvec::TagMode::pretagged),
      doctest::Contains("token 2"), std::runtime_error);
}

TEST_CASE("sentence boundaries at newline and terminal punctuation") {
  auto sentences = keyvec::tag_text("dog_NN ._. cat_NN\nbird_NN",
                                    keyvec::TagMode::pretagged);
  REQUIRE(sentences.size() == 3);
  CHECK(sentences[0].size() == 2);  // dog .
  CHECK(sentences[1].size() == 1);  // cat
  CHECK(sentences[2].size() == 1);  // bird
}

TEST_CASE("heuristic tagging follows the documented rule order") {
  // 10 tokens: lexicon, suffixes, capitalization and fallback in one line
  auto sentences = keyvec::tag_text(
      "The famous Hamilton dog of war walked gracefully taxation .",
      keyvec::TagMode::heuristic);
  REQUIRE(sentences.size() == 1);
  const Sentence& s = sentences[0];
  REQUIRE(s.size() == 10);
  auto expect = std::vector<std::pair<std::string, std::string>>{
      {"The", "DT"},        // lexicon hit, case-insensitive
      {"famous", "JJ"},     // -ous suffix
      {"Hamilton", "NN"},   // capitalized mid-sentence
      {"dog", "NN"},        // lexicon
      {"of", "IN"},         // lexicon
      {"war", "NN"},        // lexicon
      {"walked", "XX"},     // unknown lowercase
      {"gracefully", "XX"}, // unknown lowercase
      {"taxation", "NN"},   // -tion suffix
      {".", "."},           // peeled punctuation
  };
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CAPTURE(i);
    CHECK(s[i].surface == expect[i].first);
    CHECK(s[i].pos == expect[i].second);
  }

  // sentence-initial capitalized unknown words are not nouned
  auto initial = keyvec::tag_text("Zorgle dog", keyvec::TagMode::heuristic);
  CHECK(initial[0][0].pos == "XX");
  CHECK(initial[0][1].pos == "NN");
}

TEST_CASE("heuristic mode peels punctuation into separate tokens") {
  auto sentences = keyvec::tag_text("(hello) world!", keyvec::TagMode::heuristic);
  REQUIRE(sentences.size() == 1);
  std::vector<std::string> surfaces;
  for (const TaggedToken& t : sentences[0]) surfaces.push_back(t.surface);
  CHECK(surfaces == std::vector<std::string>{"(", "hello", ")", "world", "!"});
  for (const TaggedToken& t : sentences[0]) {
    if (t.surface.size() == 1 && !isalnum(static_cast<unsigned char>(t.surface[0]))) {
      CHECK(t.cls == TagClass::other);
    }
  }
}
