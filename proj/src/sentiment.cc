#include "weaklabel/sentiment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weaklabel {

CompoundScore::CompoundScore(double value) : value_(value) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw std::invalid_argument("compound score outside [-1, 1]");
  }
}

CompoundScore compound_score(const std::vector<std::string> &tokens,
                             const SentimentLexicon &lex) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto hit = lex.valences.find(tokens[i]);
    if (hit == lex.valences.end() || hit->second == 0.0) continue;
    const double valence = hit->second;
    double adjusted = valence;
    bool negated = false;
    std::size_t first = i >= kScanWindow ? i - kScanWindow : 0;
    for (std::size_t j = first; j < i; ++j) {
      auto booster = lex.boosters.find(tokens[j]);
      if (booster != lex.boosters.end()) {
        adjusted += valence > 0 ? booster->second : -booster->second;
      }
      if (lex.negators.count(tokens[j])) negated = true;
    }
    // Dampeners shrink the magnitude but never flip the sign.
    adjusted = valence > 0 ? std::max(adjusted, 0.0) : std::min(adjusted, 0.0);
    if (negated) adjusted *= kNegationScalar;
    sum += adjusted;
  }
  double score = sum / std::sqrt(sum * sum + kNormalizationAlpha);
  return CompoundScore(std::clamp(score, -1.0, 1.0));
}

Polarity polarity(CompoundScore score) {
  if (score.value() > kPolarityThreshold) return Polarity::kPos;
  if (score.value() < -kPolarityThreshold) return Polarity::kNeg;
  return Polarity::kNeutral;
}

}  // namespace weaklabel
