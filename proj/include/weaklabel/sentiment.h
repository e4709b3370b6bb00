#ifndef WEAKLABEL_SENTIMENT_H_
#define WEAKLABEL_SENTIMENT_H_

#include <string>
#include <vector>

#include "weaklabel/lexicon.h"

namespace weaklabel {

enum class Polarity { kNeg, kPos, kNeutral };

// Rule-based polarity in [-1, 1].
class CompoundScore {
 public:
  CompoundScore() = default;
  // Throws std::invalid_argument outside [-1, 1].
  explicit CompoundScore(double value);
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

inline constexpr double kNegationScalar = -0.74;
inline constexpr double kNormalizationAlpha = 15.0;
inline constexpr int kScanWindow = 3;
inline constexpr double kPolarityThreshold = 0.05;

// Sums lexicon valences over the tokens, each adjusted by boosters and
// negators among its three preceding tokens, and squashes the sum with
// S / sqrt(S^2 + 15).
CompoundScore compound_score(const std::vector<std::string> &tokens,
                             const SentimentLexicon &lex);

// Pos above 0.05, Neg below -0.05, otherwise Neutral.
Polarity polarity(CompoundScore score);

}  // namespace weaklabel

#endif  // WEAKLABEL_SENTIMENT_H_
