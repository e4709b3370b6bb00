#ifndef WEAKLABEL_TESTS_SUPPORT_H_
#define WEAKLABEL_TESTS_SUPPORT_H_

#include <filesystem>
#include <string>

#include "weaklabel/corpus.h"
#include "weaklabel/io.h"
#include "weaklabel/lexicon.h"

namespace weaklabel::testing {

inline std::string data_path(const std::string &rel) {
  return (std::filesystem::path(WEAKLABEL_DATA_DIR) / rel).string();
}

inline std::string golden_path(const std::string &rel) {
  return (std::filesystem::path(WEAKLABEL_GOLDEN_DIR) / rel).string();
}

// Fresh directory under the build tree, wiped on entry.
inline std::string scratch_dir(const std::string &name) {
  auto dir = std::filesystem::path(WEAKLABEL_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline const StopwordSet &stopwords() {
  static const StopwordSet s = StopwordSet::Load(data_path("stopwords.txt"));
  return s;
}

inline const AspectLexicon &aspect_lexicon() {
  static const AspectLexicon lex = AspectLexicon::Load(data_path("aspects"));
  return lex;
}

inline const SentimentLexicon &sentiment_lexicon() {
  static const SentimentLexicon lex = SentimentLexicon::Load(data_path("sentiment"));
  return lex;
}

inline CleanReview review_of(const std::string &body, Rating rating = Rating::kPos,
                             const std::string &title = "") {
  return clean(RawReview{0, rating, title, body}, stopwords());
}

}  // namespace weaklabel::testing

#endif  // WEAKLABEL_TESTS_SUPPORT_H_
