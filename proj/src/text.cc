#include "weaklabel/text.h"

#include <fstream>

#include "weaklabel/error.h"

namespace weaklabel {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) ||
         (u >= 91 && u <= 96) || (u >= 123 && u <= 126);
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = false;
  for (char c : text) {
    if (is_space(c)) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

std::string normalize_spaces(std::string_view text) {
  std::string out;
  for (const std::string &token : split_whitespace(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

std::vector<std::string> match_tokens(std::string_view match_text) {
  std::vector<std::string> tokens;
  for (const std::string &raw : split_whitespace(match_text)) {
    if (raw == "$") {
      tokens.push_back(raw);
      continue;
    }
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && is_punct(raw[begin])) ++begin;
    while (end > begin && is_punct(raw[end - 1])) --end;
    if (end > begin) tokens.push_back(raw.substr(begin, end - begin));
  }
  return tokens;
}

std::vector<std::string> read_list_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = normalize_spaces(line);
    if (entry.empty() || entry.front() == '#') continue;
    entries.push_back(std::move(entry));
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return entries;
}

}  // namespace weaklabel
