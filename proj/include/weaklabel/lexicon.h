#ifndef WEAKLABEL_LEXICON_H_
#define WEAKLABEL_LEXICON_H_

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "weaklabel/corpus.h"

namespace weaklabel {

// Aspect ids double as the labels the aspect rules emit.
enum class Aspect : int { kPrice = 0, kQuality = 1, kService = 2, kSize = 3, kUsability = 4 };

inline constexpr int kNumAspects = 5;

std::string_view aspect_name(int aspect);       // "Price", "Quality", ...
std::string_view aspect_file_stem(int aspect);  // "price", "quality", ...

// A lexicon term: one or more lowercase tokens ("cardboard box").
struct Term {
  std::string text;
  std::vector<std::string> tokens;
};

class AspectLexicon {
 public:
  AspectLexicon() = default;
  // Throws EmptyLexicon if any aspect has no terms.
  explicit AspectLexicon(std::array<std::vector<std::string>, kNumAspects> terms);

  // Reads price.txt, quality.txt, service.txt, size.txt, usability.txt.
  static AspectLexicon Load(const std::string &dir);

  const std::vector<Term> &terms(int aspect) const;

 private:
  std::array<std::vector<Term>, kNumAspects> entries_;
};

struct AspectMatch {
  int count = 0;
  std::set<std::string> terms;
};

using AspectMatches = std::array<AspectMatch, kNumAspects>;

// Counts distinct lexicon terms present in the review's match tokens.
AspectMatches match_counts(const CleanReview &review, const AspectLexicon &lex);
AspectMatches match_counts(const std::vector<std::string> &tokens,
                           const AspectLexicon &lex);

struct SentimentLexicon {
  std::unordered_map<std::string, double> valences;
  std::unordered_set<std::string> negators;
  std::unordered_map<std::string, double> boosters;

  // valence.tsv, negators.txt, boosters.tsv under dir.
  static SentimentLexicon Load(const std::string &dir);

  // Throws InvalidLexicon on out-of-range valences or negator/booster overlap.
  void Validate() const;
};

}  // namespace weaklabel

#endif  // WEAKLABEL_LEXICON_H_
