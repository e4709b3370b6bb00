#ifndef WEAKLABEL_SYNTHETIC_H_
#define WEAKLABEL_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "weaklabel/io.h"
#include "weaklabel/lexicon.h"

namespace weaklabel {

// Seeded generator of template reviews with planted truth. Aspects are
// planted by inserting lexicon terms into neutral frames; sentiment by
// valence words consistent (Positive/Negative) or inconsistent (Mixed) with
// a sampled rating, or by leaving out valence words entirely (Mixed).
struct SyntheticOptions {
  std::size_t count = 500;
  std::uint64_t seed = 20240917;
  double mixed_rate = 1.0 / 3.0;  // balances the three sentiment classes
};

class SyntheticGenerator {
 public:
  // Throws InvalidConfig if the lexicons leave no usable valence words, if an
  // aspect has no sentiment-neutral term, or if any template word collides
  // with an aspect term or carries sentiment.
  SyntheticGenerator(const AspectLexicon &aspects, const SentimentLexicon &sentiment);

  // Throws InvalidConfig when mixed_rate is outside [0, 1].
  std::vector<GoldExample> Generate(const SyntheticOptions &options) const;

  const std::vector<std::string> &positive_words() const { return positive_; }
  const std::vector<std::string> &negative_words() const { return negative_; }
  // Aspect terms the generator plants. Left out: terms whose tokens carry
  // valence or act as negators/boosters, and punctuation-only terms ("$")
  // that stop matching once a sentence period is attached.
  const std::vector<std::string> &planted_terms(int aspect) const { return terms_.at(aspect); }
  // Every fixed word the templates can emit.
  std::vector<std::string> template_words() const;

 private:
  std::array<std::vector<std::string>, kNumAspects> terms_;
  std::vector<std::string> positive_;
  std::vector<std::string> negative_;
};

// "__label__2 title: body"
std::string to_fasttext_line(const RawReview &review);

}  // namespace weaklabel

#endif  // WEAKLABEL_SYNTHETIC_H_
