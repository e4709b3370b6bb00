#ifndef WEAKLABEL_TEXT_H_
#define WEAKLABEL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace weaklabel {

bool is_space(char c);
bool is_punct(char c);

// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower_ascii(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

// Replaces every run of whitespace with one space. Leading and trailing runs
// are collapsed too, not trimmed.
std::string collapse_whitespace(std::string_view text);

// Trims surrounding whitespace and collapses inner runs.
std::string normalize_spaces(std::string_view text);

// Tokens used for lexicon matching and sentiment scoring: whitespace split,
// leading/trailing ASCII punctuation stripped, empties dropped. A bare "$"
// token is kept as-is.
std::vector<std::string> match_tokens(std::string_view match_text);

// Reads a UTF-8 list file: one entry per line, blank lines and lines whose
// first non-space character is '#' ignored, surrounding whitespace trimmed.
std::vector<std::string> read_list_file(const std::string& path);

}  // namespace weaklabel

#endif  // WEAKLABEL_TEXT_H_
