#include "weaklabel/synthetic.h"

#include <algorithm>
#include <unordered_set>

#include "weaklabel/error.h"
#include "weaklabel/labeling.h"
#include "weaklabel/random.h"
#include "weaklabel/text.h"

namespace weaklabel {
namespace {

const std::vector<std::string> kTitles = {"my review", "first impressions", "a short note",
                                          "purchase notes", "thoughts after a month"};

const std::vector<std::string> kFillers = {
    "i ordered this for my kitchen",  "my sister told me about this one",
    "we have had it for a month now", "the color matches the photo",
    "bought it for my father",        "it came with two pieces",
    "i keep it in the garage",        "this is my second order from them",
    "my neighbor has the same one",   "we got it last spring"};

// {} marks where the aspect term goes.
const std::vector<std::string> kAspectFrames = {"about the {}", "as for the {}",
                                                "regarding the {}", "then there is the {}"};

const std::vector<std::string> kSentimentFrames = {"it is {}", "simply {}", "{} overall",
                                                   "i found it {}"};

const std::vector<std::string> kPositiveCandidates = {
    "great",     "excellent", "wonderful", "fantastic", "amazing",    "awesome",  "lovely",
    "perfect",   "happy",     "pleased",   "nice",      "good",       "superb",   "impressive",
    "delightful"};

const std::vector<std::string> kNegativeCandidates = {
    "terrible", "awful",   "horrible", "disappointing", "bad",   "annoying", "frustrating",
    "worst",    "unhappy", "sad",      "mediocre",      "lousy", "pathetic", "dreadful"};

std::string fill(const std::string &frame, const std::string &word) {
  std::string out = frame;
  out.replace(out.find("{}"), 2, word);
  return out;
}

std::unordered_set<std::string> aspect_tokens(const AspectLexicon &lex) {
  std::unordered_set<std::string> out;
  for (int a = 0; a < kNumAspects; ++a) {
    for (const Term &t : lex.terms(a)) out.insert(t.tokens.begin(), t.tokens.end());
  }
  return out;
}

template <typename T>
const T &pick(Rng &rng, const std::vector<T> &items) {
  return items[rng.below(items.size())];
}

}  // namespace

SyntheticGenerator::SyntheticGenerator(const AspectLexicon &aspects,
                                       const SentimentLexicon &sentiment)
{
  const auto blocked = aspect_tokens(aspects);
  auto neutral = [&](const std::string &w) {
    return !sentiment.valences.count(w) && !sentiment.negators.count(w) &&
           !sentiment.boosters.count(w);
  };
  for (int a = 0; a < kNumAspects; ++a) {
    for (const Term &t : aspects.terms(a)) {
      // A term that ends a sentence picks up a period; "$." no longer matches.
      const bool survives = match_tokens(t.text + ".") == t.tokens;
      if (survives && std::all_of(t.tokens.begin(), t.tokens.end(), neutral)) {
        terms_[a].push_back(t.text);
      }
    }
    if (terms_[a].empty()) {
      throw InvalidConfig("no sentiment-neutral term for aspect " + std::string(aspect_name(a)));
    }
  }
  auto usable = [&](const std::string &w, bool positive) {
    auto it = sentiment.valences.find(w);
    if (it == sentiment.valences.end()) return false;
    if (positive ? it->second <= 0.0 : it->second >= 0.0) return false;
    return !blocked.count(w) && !sentiment.negators.count(w) && !sentiment.boosters.count(w);
  };
  for (const auto &w : kPositiveCandidates) {
    if (usable(w, true)) positive_.push_back(w);
  }
  for (const auto &w : kNegativeCandidates) {
    if (usable(w, false)) negative_.push_back(w);
  }
  if (positive_.size() < 3 || negative_.size() < 3) {
    throw InvalidConfig("sentiment lexicon leaves too few usable valence words");
  }
  for (const std::string &w : template_words()) {
    if (blocked.count(w)) throw InvalidConfig("template word '" + w + "' is an aspect term");
    if (!neutral(w)) {
      throw InvalidConfig("template word '" + w + "' carries sentiment");
    }
  }
}

std::vector<std::string> SyntheticGenerator::template_words() const {
  std::vector<std::string> words;
  auto add = [&words](const std::vector<std::string> &phrases) {
    for (const std::string &p : phrases) {
      for (const std::string &t : match_tokens(p)) {
        if (t != "{}") words.push_back(t);
      }
    }
  };
  add(kTitles);
  add(kFillers);
  add(kAspectFrames);
  add(kSentimentFrames);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

std::vector<GoldExample> SyntheticGenerator::Generate(const SyntheticOptions &options) const {
  if (!(options.mixed_rate >= 0.0 && options.mixed_rate <= 1.0)) {
    throw InvalidConfig("mixed_rate must lie in [0, 1]");
  }
  Rng rng(options.seed);
  std::vector<GoldExample> out;
  out.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) {
    GoldExample ex;
    ex.review.id = i;
    ex.review.rating = rng.uniform() < 0.5 ? Rating::kPos : Rating::kNeg;
    const bool rating_pos = ex.review.rating == Rating::kPos;

    // Sentiment words: agreeing, disagreeing, or none.
    const std::vector<std::string> *words = nullptr;
    if (rng.uniform() < options.mixed_rate) {
      ex.sentiment = kSentimentMixed;
      if (rng.uniform() < 0.5) words = rating_pos ? &negative_ : &positive_;
    } else {
      ex.sentiment = rating_pos ? kSentimentPositive : kSentimentNegative;
      words = rating_pos ? &positive_ : &negative_;
    }

    // 0-3 distinct aspects.
    const double u = rng.uniform();
    const int n_aspects = u < 0.1 ? 0 : u < 0.5 ? 1 : u < 0.8 ? 2 : 3;
    std::vector<int> ids = {0, 1, 2, 3, 4};
    rng.shuffle(ids);
    ids.resize(n_aspects);

    std::vector<std::string> fragments;
    fragments.push_back(pick(rng, kFillers));
    if (rng.uniform() < 0.5) fragments.push_back(pick(rng, kFillers));
    for (int a : ids) {
      ex.aspects.insert(a);
      fragments.push_back(fill(pick(rng, kAspectFrames), pick(rng, terms_[a])));
    }
    if (words != nullptr) {
      const int n_words = 1 + static_cast<int>(rng.below(2));
      for (int k = 0; k < n_words; ++k) {
        fragments.push_back(fill(pick(rng, kSentimentFrames), pick(rng, *words)));
      }
    }
    rng.shuffle(fragments);

    ex.review.title = pick(rng, kTitles);
    for (std::size_t f = 0; f < fragments.size(); ++f) {
      if (f > 0) ex.review.body += ". ";
      ex.review.body += fragments[f];
    }
    ex.review.body += ".";
    out.push_back(std::move(ex));
  }
  return out;
}

std::string to_fasttext_line(const RawReview &review) {
  std::string out = review.rating == Rating::kPos ? "__label__2 " : "__label__1 ";
  if (!review.title.empty()) out += review.title + ": ";
  return out + review.body;
}

}  // namespace weaklabel
