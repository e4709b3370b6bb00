#include "weaklabel/lexicon.h"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "weaklabel/error.h"
#include "weaklabel/text.h"

namespace weaklabel {
namespace {

constexpr std::array<std::string_view, kNumAspects> kAspectNames = {
    "Price", "Quality", "Service", "Size", "Usability"};
constexpr std::array<std::string_view, kNumAspects> kAspectFiles = {
    "price", "quality", "service", "size", "usability"};

void check_aspect(int aspect) {
  if (aspect < 0 || aspect >= kNumAspects) {
    throw UnknownAspect("aspect id " + std::to_string(aspect) +
                        " outside [0, 5)");
  }
}

bool contains_sequence(const std::vector<std::string> &tokens,
                       const std::vector<std::string> &phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  for (std::size_t start = 0; start + phrase.size() <= tokens.size(); ++start) {
    bool hit = true;
    for (std::size_t k = 0; k < phrase.size(); ++k) {
      if (tokens[start + k] != phrase[k]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

double parse_real(const std::string &text, const std::string &where) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw InvalidLexicon(where + ": not a number '" + text + "'");
  }
}

// "token<TAB>value" lines; whitespace other than tab also accepted.
std::unordered_map<std::string, double> read_weight_file(const std::string &path) {
  std::unordered_map<std::string, double> out;
  for (const std::string &line : read_list_file(path)) {
    std::vector<std::string> fields = split_whitespace(line);
    if (fields.size() != 2) {
      throw InvalidLexicon(path + ": expected 'token<TAB>value', got '" + line + "'");
    }
    out.emplace(to_lower_ascii(fields[0]), parse_real(fields[1], path));
  }
  return out;
}

}  // namespace

std::string_view aspect_name(int aspect) {
  check_aspect(aspect);
  return kAspectNames[aspect];
}

std::string_view aspect_file_stem(int aspect) {
  check_aspect(aspect);
  return kAspectFiles[aspect];
}

AspectLexicon::AspectLexicon(std::array<std::vector<std::string>, kNumAspects> terms) {
  for (int a = 0; a < kNumAspects; ++a) {
    std::unordered_set<std::string> seen;
    for (const std::string &raw : terms[a]) {
      std::string text = normalize_spaces(to_lower_ascii(raw));
      if (text.empty() || !seen.insert(text).second) continue;
      Term term;
      term.tokens = split_whitespace(text);
      term.text = std::move(text);
      entries_[a].push_back(std::move(term));
    }
    if (entries_[a].empty()) {
      throw EmptyLexicon(std::string("no terms for aspect ") +
                         std::string(kAspectNames[a]));
    }
  }
}

AspectLexicon AspectLexicon::Load(const std::string &dir) {
  std::array<std::vector<std::string>, kNumAspects> terms;
  for (int a = 0; a < kNumAspects; ++a) {
    std::filesystem::path path =
        std::filesystem::path(dir) / (std::string(kAspectFiles[a]) + ".txt");
    terms[a] = read_list_file(path.string());
    if (terms[a].empty()) throw EmptyLexicon(path.string() + " has no terms");
  }
  return AspectLexicon(std::move(terms));
}

const std::vector<Term> &AspectLexicon::terms(int aspect) const {
  check_aspect(aspect);
  return entries_[aspect];
}

AspectMatches match_counts(const std::vector<std::string> &tokens,
                           const AspectLexicon &lex) {
  AspectMatches out;
  for (int a = 0; a < kNumAspects; ++a) {
    for (const Term &term : lex.terms(a)) {
      if (contains_sequence(tokens, term.tokens)) out[a].terms.insert(term.text);
    }
    out[a].count = static_cast<int>(out[a].terms.size());
  }
  return out;
}

AspectMatches match_counts(const CleanReview &review, const AspectLexicon &lex) {
  return match_counts(match_tokens(review.match_text), lex);
}

SentimentLexicon SentimentLexicon::Load(const std::string &dir) {
  std::filesystem::path root(dir);
  SentimentLexicon lex;
  lex.valences = read_weight_file((root / "valence.tsv").string());
  for (const std::string &w : read_list_file((root / "negators.txt").string())) {
    lex.negators.insert(to_lower_ascii(w));
  }
  lex.boosters = read_weight_file((root / "boosters.tsv").string());
  lex.Validate();
  return lex;
}

void SentimentLexicon::Validate() const {
  for (const auto &[token, v] : valences) {
    if (!std::isfinite(v) || v < -4.0 || v > 4.0) {
      throw InvalidLexicon("valence of '" + token + "' outside [-4, 4]");
    }
  }
  for (const auto &[token, inc] : boosters) {
    if (!std::isfinite(inc)) throw InvalidLexicon("booster '" + token + "' not finite");
    if (negators.count(token)) {
      throw InvalidLexicon("'" + token + "' is both a negator and a booster");
    }
  }
}

}  // namespace weaklabel
