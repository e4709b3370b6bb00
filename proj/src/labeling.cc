#include "weaklabel/labeling.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "weaklabel/error.h"
#include "weaklabel/text.h"

namespace weaklabel {

std::string_view task_name(Task task) {
  return task == Task::kAspect ? "aspect" : "sentiment";
}

Task parse_task(std::string_view name) {
  if (name == "aspect") return Task::kAspect;
  if (name == "sentiment") return Task::kSentiment;
  throw InvalidConfig("unknown task '" + std::string(name) + "'");
}

LabelMatrix::LabelMatrix(std::size_t rows, std::vector<std::string> rule_names,
                         int cardinality, std::vector<int> values)
    : rows_(rows),
      rule_names_(std::move(rule_names)),
      cardinality_(cardinality),
      values_(std::move(values)) {
  if (cardinality_ < 2) throw InvalidMatrix("cardinality must be >= 2");
  if (values_.size() != rows_ * rule_names_.size()) {
    throw InvalidMatrix("value count does not match rows x rules");
  }
  std::unordered_set<std::string> seen;
  for (const std::string &name : rule_names_) {
    if (!seen.insert(name).second) throw InvalidMatrix("duplicate rule name " + name);
  }
  for (int v : values_) {
    if (v != kAbstain && (v < 0 || v >= cardinality_)) {
      throw InvalidMatrix("label " + std::to_string(v) + " outside [0, " +
                          std::to_string(cardinality_) + ")");
    }
  }
}

int aspect_rule(const AspectMatches &matches, int aspect, int min_matches) {
  if (aspect < 0 || aspect >= kNumAspects) {
    throw UnknownAspect("aspect id " + std::to_string(aspect) + " outside [0, 5)");
  }
  if (min_matches < 1) throw InvalidConfig("min_matches must be >= 1");
  return matches[aspect].count >= min_matches ? aspect : kAbstain;
}

int aspect_rule(const CleanReview &review, int aspect, const AspectLexicon &lex,
                int min_matches) {
  if (aspect < 0 || aspect >= kNumAspects) {
    throw UnknownAspect("aspect id " + std::to_string(aspect) + " outside [0, 5)");
  }
  return aspect_rule(match_counts(review, lex), aspect, min_matches);
}

SentimentVotes sentiment_rules(Rating rating, CompoundScore score) {
  SentimentVotes votes;
  Polarity p = polarity(score);
  if (p == Polarity::kPos && rating == Rating::kPos) {
    votes.lf_positive = kSentimentPositive;
  } else if (p == Polarity::kNeg && rating == Rating::kNeg) {
    votes.lf_negative = kSentimentNegative;
  } else {
    votes.lf_mixed = kSentimentMixed;
  }
  return votes;
}

SentimentVotes sentiment_rules(const CleanReview &review, const SentimentLexicon &lex) {
  return sentiment_rules(review.rating,
                         compound_score(match_tokens(review.match_text), lex));
}

const std::vector<std::string> &aspect_rule_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int a : kAspectColumnOrder) out.push_back("If_" + std::string(aspect_file_stem(a)));
    return out;
  }();
  return names;
}

const std::vector<std::string> &sentiment_rule_names() {
  static const std::vector<std::string> names = {"lf_negative", "lf_positive",
                                                 "lf_mixed"};
  return names;
}

LabelMatrix apply_aspect_rules(std::span<const CleanReview> corpus,
                               const AspectLexicon &lex, const LabelingConfig &cfg) {
  if (corpus.empty()) throw EmptyMatrix("corpus is empty");
  std::vector<int> values;
  values.reserve(corpus.size() * kNumAspects);
  for (const CleanReview &review : corpus) {
    AspectMatches matches = match_counts(review, lex);
    for (int a : kAspectColumnOrder) {
      values.push_back(aspect_rule(matches, a, cfg.min_matches));
    }
  }
  return LabelMatrix(corpus.size(), aspect_rule_names(), kNumAspects, std::move(values));
}

LabelMatrix apply_sentiment_rules(std::span<const CleanReview> corpus,
                                  const SentimentLexicon &lex) {
  if (corpus.empty()) throw EmptyMatrix("corpus is empty");
  std::vector<int> values;
  values.reserve(corpus.size() * 3);
  for (const CleanReview &review : corpus) {
    SentimentVotes v = sentiment_rules(review, lex);
    values.push_back(v.lf_negative);
    values.push_back(v.lf_positive);
    values.push_back(v.lf_mixed);
  }
  return LabelMatrix(corpus.size(), sentiment_rule_names(), kSentimentCardinality,
                     std::move(values));
}

LabelMatrix apply_rules(std::span<const CleanReview> corpus, Task task,
                        const RuleContext &ctx) {
  if (task == Task::kAspect) {
    if (ctx.aspects == nullptr) throw std::invalid_argument("aspect lexicon required");
    return apply_aspect_rules(corpus, *ctx.aspects, ctx.config);
  }
  if (ctx.sentiment == nullptr) throw std::invalid_argument("sentiment lexicon required");
  return apply_sentiment_rules(corpus, *ctx.sentiment);
}

RuleReport analyze_rules(const LabelMatrix &matrix) {
  if (matrix.rows() == 0) throw EmptyMatrix("label matrix has no rows");
  const std::size_t m = matrix.cols();
  std::vector<std::size_t> covered(m, 0), overlapped(m, 0), conflicted(m, 0);
  std::vector<std::set<int>> emitted(m);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    std::span<const int> row = matrix.row(i);
    std::size_t voters = 0;
    std::set<int> distinct;
    for (int v : row) {
      if (v == kAbstain) continue;
      ++voters;
      distinct.insert(v);
    }
    // A voting rule conflicts exactly when the row carries two or more
    // distinct labels: at least one of them differs from its own.
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == kAbstain) continue;
      ++covered[j];
      emitted[j].insert(row[j]);
      if (voters >= 2) ++overlapped[j];
      if (distinct.size() >= 2) ++conflicted[j];
    }
  }
  RuleReport report;
  const double n = static_cast<double>(matrix.rows());
  for (std::size_t j = 0; j < m; ++j) {
    RuleStats stats;
    stats.name = matrix.rule_names()[j];
    stats.polarity.assign(emitted[j].begin(), emitted[j].end());
    stats.coverage = static_cast<double>(covered[j]) / n;
    stats.overlaps = static_cast<double>(overlapped[j]) / n;
    stats.conflicts = static_cast<double>(conflicted[j]) / n;
    report.rules.push_back(std::move(stats));
  }
  return report;
}

}  // namespace weaklabel
