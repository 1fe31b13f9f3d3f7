#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace m2c {

/// Splits an identifier into lowercase subtoken words: camelCase humps,
/// '_'/'$' separators, letter/digit boundaries. Acronym runs stay one word
/// ("parseHTTPRequest2" -> parse, http, request, 2).
inline std::vector<std::string> split_subtokens(std::string_view identifier) {
  enum Cls { kLower, kUpper, kDigit, kSep };
  auto cls = [](char c) {
    if (c >= 'a' && c <= 'z') return kLower;
    if (c >= 'A' && c <= 'Z') return kUpper;
    if (c >= '0' && c <= '9') return kDigit;
    return kSep;
  };

  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      words.push_back(cur);
      cur.clear();
    }
  };

  const std::size_t n = identifier.size();
  for (std::size_t i = 0; i < n; ++i) {
    char c = identifier[i];
    Cls k = cls(c);
    if (k == kSep) {
      flush();
      continue;
    }
    if (i > 0 && !cur.empty()) {
      Cls prev = cls(identifier[i - 1]);
      bool boundary = false;
      if (k == kUpper && (prev == kLower || prev == kDigit)) boundary = true;
      // Last upper of an acronym run starts the next word: "HTTPRequest".
      if (k == kUpper && prev == kUpper && i + 1 < n && cls(identifier[i + 1]) == kLower)
        boundary = true;
      if (k == kDigit && prev != kDigit) boundary = true;
      if (k != kDigit && prev == kDigit) boundary = true;
      if (boundary) flush();
    }
    cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  flush();
  return words;
}

}  // namespace m2c
