#ifndef WEAKLABEL_CORPUS_H_
#define WEAKLABEL_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace weaklabel {

// Star-rating signal carried by the fastText label prefix.
enum class Rating { kNeg, kPos };

std::string_view rating_name(Rating rating);  // "neg" / "pos"
Rating parse_rating_name(std::string_view name);

struct RawReview {
  std::size_t id = 0;
  Rating rating = Rating::kNeg;
  std::string title;
  std::string body;
};

// Two cleaning levels. match_text keeps punctuation, digits and stopwords for
// lexicon matching and sentiment scoring; model_tokens is the fully cleaned,
// stemmed token stream the classifier sees.
struct CleanReview {
  std::size_t id = 0;
  Rating rating = Rating::kNeg;
  std::string match_text;
  std::vector<std::string> model_tokens;

  bool operator==(const CleanReview &) const = default;
};

// Stopwords are stored letters-only ("don't" -> "dont") so they compare
// against tokens after digit/punctuation stripping.
class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(const std::vector<std::string> &words);

  static StopwordSet Load(const std::string &path);

  bool contains(std::string_view token) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// "__label__1 title: body" -> RawReview. Throws MalformedLine.
RawReview parse_fasttext_line(std::string_view line, std::size_t id);

// Lowercase, drop URL substrings (http://, https://, www. up to the next
// whitespace), collapse whitespace runs. Idempotent.
std::string clean_match_text(std::string_view text);

// Keeps only a-z in each whitespace token, drops empties and stopwords,
// stems, and drops tokens whose stem is itself a stopword. Applying this to
// the space-joined output returns the same tokens.
std::vector<std::string> model_tokenize(std::string_view match_text,
                                        const StopwordSet &stopwords);

CleanReview clean(const RawReview &raw, const StopwordSet &stopwords);

struct LoadedCorpus {
  std::vector<CleanReview> reviews;
  std::size_t skipped = 0;
};

// Reads one fastText line per review. Malformed lines are skipped and
// counted; blank lines are ignored. Ids are 0..n-1 in file order.
LoadedCorpus load_corpus(const std::string &path, const StopwordSet &stopwords,
                         std::optional<std::size_t> limit = std::nullopt);

}  // namespace weaklabel

#endif  // WEAKLABEL_CORPUS_H_
