#pragma once

#include <span>
#include <string>

#include "keyvec/embedding.hpp"
#include "keyvec/phrase.hpp"

namespace keyvec {

struct CompositionResult {
  Vec vector;     // unit norm, or exactly zero when nothing matched
  int units = 0;  // minimal number of unit phrases covering the input
};

/// Maps a phrase to a feature vector by dynamic programming over token
/// boundaries: every contiguous token span joined with `joiner` that exists
/// in the model is a candidate unit; the split minimizing the unit count
/// wins, with the first writer kept on ties. After each combine step the
/// running vector is re-normalized. A position from which no span matches
/// skips exactly one token, carrying the vector unchanged at unit cost 1.
CompositionResult compose(const EmbeddingModel& model,
                          std::span<const std::string> tokens,
                          char joiner = '_');

CompositionResult compose(const EmbeddingModel& model, const Phrase& phrase,
                          char joiner = '_');

}  // namespace keyvec
