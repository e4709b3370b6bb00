#include <doctest.h>

#include <set>

#include "oracles.h"
#include "support.h"
#include "weaklabel/error.h"
#include "weaklabel/labeling.h"
#include "weaklabel/random.h"
#include "weaklabel/text.h"

using namespace weaklabel;
using weaklabel::testing::aspect_lexicon;
using weaklabel::testing::brute_force;
using weaklabel::testing::random_matrix;
using weaklabel::testing::review_of;
using weaklabel::testing::sentiment_lexicon;

namespace {

// Substring search on space-padded text, independent of the library matcher.
int rescan_count(const CleanReview &review, int aspect) {
  std::string padded = " ";
  for (const std::string &t : match_tokens(review.match_text)) padded += t + " ";
  int count = 0;
  for (const Term &term : aspect_lexicon().terms(aspect)) {
    if (padded.find(" " + term.text + " ") != std::string::npos) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("aspect_rule on known review fragments") {
  const CleanReview smell =
      review_of("this item will smell for about 2 weeks", Rating::kNeg, "no no no");
  CHECK(aspect_rule(smell, 1, aspect_lexicon(), 1) == 1);
  CHECK(aspect_rule(smell, 0, aspect_lexicon(), 1) == kAbstain);
  const int count = match_counts(smell, aspect_lexicon())[1].count;
  CHECK(aspect_rule(smell, 1, aspect_lexicon(), count + 1) == kAbstain);
  CHECK_THROWS_AS(aspect_rule(smell, 5, aspect_lexicon(), 1), UnknownAspect);
  CHECK_THROWS_AS(aspect_rule(smell, 1, aspect_lexicon(), 0), InvalidConfig);

  const CleanReview money = review_of("waste your money", Rating::kNeg, "don't");
  CHECK(aspect_rule(money, 0, aspect_lexicon(), 1) == 0);
}

TEST_CASE("sentiment_rules partition") {
  auto check = [](double s, Rating r, int neg, int pos, int mix) {
    const SentimentVotes v = sentiment_rules(r, CompoundScore(s));
    CHECK(v.lf_negative == neg);
    CHECK(v.lf_positive == pos);
    CHECK(v.lf_mixed == mix);
  };
  check(0.6, Rating::kPos, kAbstain, 1, kAbstain);
  check(-0.4, Rating::kPos, kAbstain, kAbstain, 2);
  check(0.0, Rating::kNeg, kAbstain, kAbstain, 2);
  check(-0.4, Rating::kNeg, 0, kAbstain, kAbstain);
  check(0.6, Rating::kNeg, kAbstain, kAbstain, 2);

  const CleanReview smell =
      review_of("this item will smell for about 2 weeks", Rating::kNeg, "no no no");
  CHECK(sentiment_rules(smell, sentiment_lexicon()).lf_negative == 0);
}

TEST_CASE("apply_rules shapes") {
  const std::vector<CleanReview> one = {review_of("i would not spend money on it")};
  RuleContext ctx{&aspect_lexicon(), &sentiment_lexicon(), {}};
  const LabelMatrix a = apply_rules(one, Task::kAspect, ctx);
  CHECK(a.cols() == 5);
  CHECK(a.cardinality() == 5);
  CHECK(a.values() == std::vector<int>{0, -1, -1, -1, -1});
  CHECK(a.rule_names() == std::vector<std::string>{"If_price", "If_size", "If_service",
                                                   "If_quality", "If_usability"});
  const std::vector<CleanReview> smell = {review_of("it will smell")};
  CHECK(apply_rules(smell, Task::kAspect, ctx).values() == std::vector<int>{-1, -1, -1, 1, -1});

  const std::vector<CleanReview> empty_text = {review_of("")};
  CHECK(apply_rules(empty_text, Task::kAspect, ctx).values() ==
        std::vector<int>{-1, -1, -1, -1, -1});

  const LabelMatrix s = apply_rules(one, Task::kSentiment, ctx);
  CHECK(s.cols() == 3);
  CHECK(s.cardinality() == 3);
  CHECK(s.rule_names() == std::vector<std::string>{"lf_negative", "lf_positive", "lf_mixed"});

  CHECK_THROWS_AS(apply_rules(std::vector<CleanReview>{}, Task::kAspect, ctx), EmptyMatrix);
}

TEST_CASE("LabelMatrix validates entries and names") {
  CHECK_THROWS_AS(LabelMatrix(1, {"a"}, 2, {2}), InvalidMatrix);
  CHECK_THROWS_AS(LabelMatrix(1, {"a"}, 2, {-2}), InvalidMatrix);
  CHECK_THROWS_AS(LabelMatrix(1, {"a", "a"}, 2, {0, 1}), InvalidMatrix);
  CHECK_THROWS_AS(LabelMatrix(2, {"a"}, 2, {0}), InvalidMatrix);
}

TEST_CASE("analyze_rules worked example") {
  const LabelMatrix L(4, {"a", "b"}, 2, {0, -1, 0, 1, -1, -1, 1, 1});
  const RuleReport r = analyze_rules(L);
  REQUIRE(r.rules.size() == 2);
  CHECK(r.rules[0].coverage == 0.75);
  CHECK(r.rules[1].coverage == 0.5);
  CHECK(r.rules[0].overlaps == 0.5);
  CHECK(r.rules[1].overlaps == 0.5);
  CHECK(r.rules[0].conflicts == 0.25);
  CHECK(r.rules[1].conflicts == 0.25);
  CHECK(r.rules[0].polarity == std::vector<int>{0, 1});
  CHECK(r.rules[1].polarity == std::vector<int>{1});

  const RuleReport single = analyze_rules(LabelMatrix(3, {"only"}, 2, {0, 1, -1}));
  CHECK(single.rules[0].overlaps == 0.0);
  CHECK(single.rules[0].conflicts == 0.0);

  CHECK_THROWS_AS(analyze_rules(LabelMatrix(0, {"a"}, 2, {})), EmptyMatrix);
}

TEST_CASE("property: analyze_rules equals the pairwise oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const LabelMatrix L = random_matrix(rng);
    const RuleReport r = analyze_rules(L);
    const auto oracle = brute_force(L);
    REQUIRE(r.rules.size() == oracle.size());
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      CHECK(r.rules[j].coverage == oracle[j].coverage);
      CHECK(r.rules[j].overlaps == oracle[j].overlaps);
      CHECK(r.rules[j].conflicts == oracle[j].conflicts);
      CHECK(r.rules[j].conflicts <= r.rules[j].overlaps);
      CHECK(r.rules[j].overlaps <= r.rules[j].coverage);
    }
  }
}

TEST_CASE("property: sentiment matrices are a partition and aspect columns match a rescan") {
  const std::vector<std::string> words = {"good", "bad", "not", "very", "money", "smell",
                                          "cardboard", "box", "the", "fits", "work", "great",
                                          "terrible", "never", "size", "$"};
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<CleanReview> corpus;
    const std::size_t n = 1 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      std::string text;
      for (std::size_t k = rng.below(12); k > 0; --k) text += words[rng.below(words.size())] + " ";
      corpus.push_back(review_of(text, rng.uniform() < 0.5 ? Rating::kPos : Rating::kNeg));
    }
    const LabelMatrix s = apply_sentiment_rules(corpus, sentiment_lexicon());
    for (std::size_t i = 0; i < s.rows(); ++i) {
      int firing = 0;
      for (int v : s.row(i)) firing += v != kAbstain;
      CHECK(firing == 1);
    }
    const RuleReport r = analyze_rules(s);
    double total = 0.0;
    for (const RuleStats &st : r.rules) {
      CHECK(st.overlaps == 0.0);
      CHECK(st.conflicts == 0.0);
      total += st.coverage;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const int min_matches = 1 + static_cast<int>(rng.below(2));
    const LabelMatrix a = apply_aspect_rules(corpus, aspect_lexicon(), {min_matches});
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < kNumAspects; ++j) {
        const int aspect = kAspectColumnOrder[j];
        CHECK((a.at(i, j) != kAbstain) == (rescan_count(corpus[i], aspect) >= min_matches));
        if (a.at(i, j) != kAbstain) CHECK(a.at(i, j) == aspect);
      }
    }
  }
}
