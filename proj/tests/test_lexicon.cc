#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "support.h"
#include "weaklabel/error.h"
#include "weaklabel/lexicon.h"
#include "weaklabel/random.h"
#include "weaklabel/text.h"

using namespace weaklabel;
using weaklabel::testing::aspect_lexicon;
using weaklabel::testing::review_of;
using weaklabel::testing::scratch_dir;
using weaklabel::testing::sentiment_lexicon;

namespace {

bool has_term(int aspect, const std::string &text) {
  const auto &terms = aspect_lexicon().terms(aspect);
  return std::any_of(terms.begin(), terms.end(),
                     [&](const Term &t) { return t.text == text; });
}

void write(const std::string &path, const std::string &text) { std::ofstream(path) << text; }

std::string write_aspect_dir(const std::string &name, const std::string &price_text) {
  const std::string dir = scratch_dir(name);
  write(dir + "/price.txt", price_text);
  for (const char *f : {"quality", "service", "size", "usability"}) {
    write(dir + "/" + f + ".txt", std::string("# ") + f + "\n" + f + "\n");
  }
  return dir;
}

}  // namespace

TEST_CASE("aspect ids follow the rule report numbering") {
  CHECK(aspect_name(0) == "Price");
  CHECK(aspect_name(1) == "Quality");
  CHECK(aspect_name(2) == "Service");
  CHECK(aspect_name(3) == "Size");
  CHECK(aspect_name(4) == "Usability");
  CHECK_THROWS_AS(aspect_name(5), UnknownAspect);
  CHECK_THROWS_AS(aspect_name(-1), UnknownAspect);
}

TEST_CASE("shipped aspect lexicon carries the expected terms") {
  CHECK(has_term(0, "price"));
  CHECK(has_term(0, "money"));
  CHECK(has_term(0, "$"));
  CHECK(has_term(2, "cardboard box"));
  CHECK(has_term(3, "small inch"));
  CHECK(has_term(1, "smell"));
  for (int a = 0; a < kNumAspects; ++a) {
    for (const Term &t : aspect_lexicon().terms(a)) {
      CHECK(t.text == to_lower_ascii(t.text));
      CHECK(t.tokens == split_whitespace(t.text));
    }
  }
  // "Money" and "money" collapse to one term.
  const auto &price = aspect_lexicon().terms(0);
  CHECK(std::count_if(price.begin(), price.end(),
                      [](const Term &t) { return t.text == "money"; }) == 1);
}

TEST_CASE("aspect lexicon loading normalises and deduplicates") {
  const AspectLexicon lex =
      AspectLexicon::Load(write_aspect_dir("lex_dedup", "Price\nprice\n  Sharp   Edges \n"));
  REQUIRE(lex.terms(0).size() == 2);
  CHECK(lex.terms(0)[0].text == "price");
  CHECK(lex.terms(0)[1].text == "sharp edges");

  CHECK_THROWS_AS(AspectLexicon::Load(write_aspect_dir("lex_empty", "# nothing\n\n")),
                  EmptyLexicon);
  CHECK_THROWS_AS(AspectLexicon::Load(scratch_dir("lex_missing")), IoError);
}

TEST_CASE("match_counts on known review fragments") {
  const AspectMatches smell =
      match_counts(review_of("this item will smell for about 2 weeks", Rating::kNeg, "no no no"),
                   aspect_lexicon());
  CHECK(smell[1].count >= 1);
  CHECK(smell[1].terms.count("smell") == 1);

  const AspectMatches money = match_counts(review_of("don't waste your money"), aspect_lexicon());
  CHECK(money[0].count >= 1);
  CHECK(money[0].terms.count("money") == 1);

  const AspectMatches empty = match_counts(review_of(""), aspect_lexicon());
  for (const AspectMatch &m : empty) {
    CHECK(m.count == 0);
    CHECK(m.terms.empty());
  }
}

TEST_CASE("match_counts handles phrases, $ and repeats") {
  const auto m = match_counts(
      review_of("It came in a cardboard box, cost $ 20... cost again! sharp"), aspect_lexicon());
  CHECK(m[2].terms.count("cardboard box") == 1);
  CHECK(m[2].terms.count("box") == 1);
  CHECK(m[0].terms.count("$") == 1);
  CHECK(m[0].terms.count("cost") == 1);
  CHECK(m[1].terms == std::set<std::string>{"sharp"});

  // Phrase tokens must be adjacent.
  const auto split = match_counts(review_of("cardboard and a box"), aspect_lexicon());
  CHECK(split[2].terms.count("cardboard box") == 0);
}

TEST_CASE("property: counts equal term-set sizes and neutral sentences change nothing") {
  std::vector<std::string> vocab;
  for (int a = 0; a < kNumAspects; ++a) {
    for (const Term &t : aspect_lexicon().terms(a)) vocab.push_back(t.text);
  }
  for (const char *w : {"the", "it", "and", "very", "not", "good", "great", "!", "2"}) {
    vocab.push_back(w);
  }
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const std::size_t n = rng.below(10);
    for (std::size_t i = 0; i < n; ++i) text += vocab[rng.below(vocab.size())] + " ";
    const AspectMatches m = match_counts(review_of(text), aspect_lexicon());
    for (const AspectMatch &am : m) CHECK(am.count == static_cast<int>(am.terms.size()));

    const AspectMatches extended =
        match_counts(review_of(text + ". we got it last spring."), aspect_lexicon());
    for (int a = 0; a < kNumAspects; ++a) CHECK(extended[a].terms == m[a].terms);
    const AspectMatches again = match_counts(review_of(text), aspect_lexicon());
    for (int a = 0; a < kNumAspects; ++a) CHECK(again[a].terms == m[a].terms);
  }
}

TEST_CASE("shipped sentiment lexicon is valid") {
  const SentimentLexicon &lex = sentiment_lexicon();
  CHECK(lex.valences.size() >= 200);
  CHECK(lex.valences.at("good") == doctest::Approx(1.9));
  CHECK(lex.negators.count("not") == 1);
  CHECK(lex.negators.count("don't") == 1);
  CHECK(lex.boosters.at("very") == doctest::Approx(0.293));
  for (const auto &[token, v] : lex.valences) {
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) <= 4.0);
  }
  for (const auto &[token, inc] : lex.boosters) CHECK(lex.negators.count(token) == 0);
}

TEST_CASE("sentiment lexicon validation rejects bad data") {
  SentimentLexicon lex;
  lex.valences["x"] = 5.0;
  CHECK_THROWS_AS(lex.Validate(), InvalidLexicon);
  lex.valences["x"] = 1.0;
  lex.negators.insert("very");
  lex.boosters["very"] = 0.293;
  CHECK_THROWS_AS(lex.Validate(), InvalidLexicon);
}
