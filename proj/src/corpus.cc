#include "weaklabel/corpus.h"

#include <fstream>

#include "weaklabel/error.h"
#include "weaklabel/stemmer.h"
#include "weaklabel/text.h"

namespace weaklabel {
namespace {

constexpr std::string_view kLabelPrefix = "__label__";

std::string letters_only(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (c >= 'a' && c <= 'z') out.push_back(c);
  }
  return out;
}

std::string strip_line_terminators(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '\n' && c != '\r') out.push_back(c);
  }
  return out;
}

bool starts_url(std::string_view text, std::size_t pos) {
  std::string_view rest = text.substr(pos);
  return rest.starts_with("http://") || rest.starts_with("https://") ||
         rest.starts_with("www.");
}

}  // namespace

std::string_view rating_name(Rating rating) {
  return rating == Rating::kPos ? "pos" : "neg";
}

Rating parse_rating_name(std::string_view name) {
  if (name == "pos") return Rating::kPos;
  if (name == "neg") return Rating::kNeg;
  throw SchemaError("unknown rating '" + std::string(name) + "'");
}

StopwordSet::StopwordSet(const std::vector<std::string> &words) {
  for (const std::string &w : words) {
    std::string normalized = letters_only(to_lower_ascii(w));
    if (!normalized.empty()) words_.insert(std::move(normalized));
  }
}

StopwordSet StopwordSet::Load(const std::string &path) {
  return StopwordSet(read_list_file(path));
}

bool StopwordSet::contains(std::string_view token) const {
  return words_.count(std::string(token)) > 0;
}

RawReview parse_fasttext_line(std::string_view line, std::size_t id) {
  if (!line.starts_with(kLabelPrefix) || line.size() < kLabelPrefix.size() + 2) {
    throw MalformedLine("line " + std::to_string(id) +
                        ": missing __label__ prefix");
  }
  char digit = line[kLabelPrefix.size()];
  if (line[kLabelPrefix.size() + 1] != ' ') {
    throw MalformedLine("line " + std::to_string(id) +
                        ": label must be followed by a space");
  }
  RawReview review;
  review.id = id;
  if (digit == '1') {
    review.rating = Rating::kNeg;
  } else if (digit == '2') {
    review.rating = Rating::kPos;
  } else {
    throw MalformedLine("line " + std::to_string(id) + ": label digit '" +
                        std::string(1, digit) + "' is not 1 or 2");
  }
  std::string rest = strip_line_terminators(line.substr(kLabelPrefix.size() + 2));
  std::size_t sep = rest.find(": ");
  if (sep == std::string::npos) {
    review.body = std::move(rest);
  } else {
    review.title = rest.substr(0, sep);
    review.body = rest.substr(sep + 2);
  }
  return review;
}

std::string clean_match_text(std::string_view text) {
  std::string lowered = to_lower_ascii(text);
  std::string no_urls;
  no_urls.reserve(lowered.size());
  std::size_t i = 0;
  while (i < lowered.size()) {
    if (starts_url(lowered, i)) {
      while (i < lowered.size() && !is_space(lowered[i])) ++i;
      continue;
    }
    no_urls.push_back(lowered[i]);
    ++i;
  }
  return collapse_whitespace(no_urls);
}

std::vector<std::string> model_tokenize(std::string_view match_text,
                                        const StopwordSet &stopwords) {
  std::vector<std::string> tokens;
  for (const std::string &raw : split_whitespace(match_text)) {
    std::string token = letters_only(raw);
    if (token.empty() || stopwords.contains(token)) continue;
    std::string stemmed = stem(token);
    if (stemmed.empty() || stopwords.contains(stemmed)) continue;
    tokens.push_back(std::move(stemmed));
  }
  return tokens;
}

CleanReview clean(const RawReview &raw, const StopwordSet &stopwords) {
  CleanReview out;
  out.id = raw.id;
  out.rating = raw.rating;
  out.match_text = clean_match_text(raw.title + " ; " + raw.body);
  out.model_tokens = model_tokenize(out.match_text, stopwords);
  return out;
}

LoadedCorpus load_corpus(const std::string &path, const StopwordSet &stopwords,
                         std::optional<std::size_t> limit) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path);
  LoadedCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (limit && corpus.reviews.size() >= *limit) break;
    if (normalize_spaces(line).empty()) continue;
    try {
      RawReview raw = parse_fasttext_line(line, corpus.reviews.size());
      corpus.reviews.push_back(clean(raw, stopwords));
    } catch (const MalformedLine &) {
      ++corpus.skipped;
    }
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return corpus;
}

}  // namespace weaklabel
