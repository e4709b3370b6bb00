#ifndef WEAKLABEL_LABELING_H_
#define WEAKLABEL_LABELING_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "weaklabel/corpus.h"
#include "weaklabel/lexicon.h"
#include "weaklabel/sentiment.h"

namespace weaklabel {

inline constexpr int kAbstain = -1;

enum class Task { kAspect, kSentiment };

// Sentiment label ids emitted by the sentiment rules.
inline constexpr int kSentimentNegative = 0;
inline constexpr int kSentimentPositive = 1;
inline constexpr int kSentimentMixed = 2;
inline constexpr int kSentimentCardinality = 3;

std::string_view task_name(Task task);
Task parse_task(std::string_view name);

// Row-major n_rows x n_rules matrix of rule outputs; kAbstain = -1.
class LabelMatrix {
 public:
  LabelMatrix() = default;
  // Throws InvalidMatrix on out-of-range entries, duplicate rule names,
  // cardinality < 2 or a values/shape mismatch.
  LabelMatrix(std::size_t rows, std::vector<std::string> rule_names,
              int cardinality, std::vector<int> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return rule_names_.size(); }
  int cardinality() const { return cardinality_; }
  const std::vector<std::string> &rule_names() const { return rule_names_; }

  int at(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
  std::span<const int> row(std::size_t r) const {
    return std::span<const int>(values_).subspan(r * cols(), cols());
  }
  const std::vector<int> &values() const { return values_; }

 private:
  std::size_t rows_ = 0;
  std::vector<std::string> rule_names_;
  int cardinality_ = 2;
  std::vector<int> values_;
};

struct RuleStats {
  std::string name;
  std::vector<int> polarity;  // sorted distinct emitted labels
  double coverage = 0.0;
  double overlaps = 0.0;
  double conflicts = 0.0;
};

struct RuleReport {
  std::vector<RuleStats> rules;
};

struct LabelingConfig {
  int min_matches = 1;
};

// Aspect id if at least min_matches distinct terms of that aspect matched.
int aspect_rule(const CleanReview &review, int aspect, const AspectLexicon &lex,
                int min_matches);
int aspect_rule(const AspectMatches &matches, int aspect, int min_matches);

struct SentimentVotes {
  int lf_negative = kAbstain;
  int lf_positive = kAbstain;
  int lf_mixed = kAbstain;
};

// Exactly one rule fires: positive when score and rating agree positive,
// negative when both agree negative, mixed otherwise.
SentimentVotes sentiment_rules(Rating rating, CompoundScore score);
SentimentVotes sentiment_rules(const CleanReview &review, const SentimentLexicon &lex);

// Aspect matrix columns: price, size, service, quality, usability. Each
// column emits its aspect id, so column position and label differ.
inline constexpr std::array<int, kNumAspects> kAspectColumnOrder = {0, 3, 2, 1, 4};

const std::vector<std::string> &aspect_rule_names();
const std::vector<std::string> &sentiment_rule_names();

LabelMatrix apply_aspect_rules(std::span<const CleanReview> corpus,
                               const AspectLexicon &lex, const LabelingConfig &cfg);
LabelMatrix apply_sentiment_rules(std::span<const CleanReview> corpus,
                                  const SentimentLexicon &lex);

struct RuleContext {
  const AspectLexicon *aspects = nullptr;
  const SentimentLexicon *sentiment = nullptr;
  LabelingConfig config;
};

// Aspect task: n x 5, cardinality 5, one column per aspect id. Sentiment task:
// n x 3, cardinality 3, columns [lf_negative, lf_positive, lf_mixed]. Throws
// EmptyMatrix on an empty corpus and std::invalid_argument if the lexicon the
// task needs is missing from ctx.
LabelMatrix apply_rules(std::span<const CleanReview> corpus, Task task,
                        const RuleContext &ctx);

// Coverage, overlap and conflict fractions per rule. Throws EmptyMatrix.
RuleReport analyze_rules(const LabelMatrix &matrix);

}  // namespace weaklabel

#endif  // WEAKLABEL_LABELING_H_
