#include "keyvec/compose.hpp"

#include <stdexcept>
#include <vector>

namespace keyvec {

CompositionResult compose(const EmbeddingModel& model,
                          std::span<const std::string> tokens, char joiner) {
  if (tokens.empty()) throw std::invalid_argument("compose: empty phrase");

  const std::size_t n = tokens.size();
  const std::size_t dim = model.dim();

  std::vector<int> units(n + 1, -1);  // -1 = boundary not reached
  std::vector<Vec> acc(n + 1);
  units[0] = 0;
  acc[0] = Vec(dim, 0.0f);

  auto relax = [&](std::size_t b, int candidate_units, Vec vec) {
    if (units[b] == -1 || candidate_units < units[b]) {
      units[b] = candidate_units;
      acc[b] = std::move(vec);
    }
  };

  for (std::size_t a = 0; a < n; ++a) {
    if (units[a] == -1) continue;
    bool any_span_matched = false;
    std::string span = tokens[a];
    for (std::size_t b = a + 1; b <= n; ++b) {
      if (b > a + 1) {
        span.push_back(joiner);
        span += tokens[b - 1];
      }
      auto vec = model.vector_of(span);
      if (!vec) continue;
      any_span_matched = true;
      Vec combined = acc[a];
      for (std::size_t i = 0; i < dim; ++i) combined[i] += (*vec)[i];
      normalize(combined);
      relax(b, units[a] + 1, std::move(combined));
    }
    if (!any_span_matched) {
      // unknown-token handler: skip one token, vector carried unchanged
      relax(a + 1, units[a] + 1, acc[a]);
    }
  }

  CompositionResult result;
  result.units = units[n];
  result.vector = std::move(acc[n]);
  return result;
}

CompositionResult compose(const EmbeddingModel& model, const Phrase& phrase,
                          char joiner) {
  std::vector<std::string> tokens = phrase.surfaces();
  return compose(model, tokens, joiner);
}

}  // namespace keyvec
