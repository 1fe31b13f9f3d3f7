#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/encoder.hpp"

namespace m2c {

class LengthMismatch : public std::runtime_error {
 public:
  explicit LengthMismatch(const std::string& origin)
      : std::runtime_error("length mismatch in pair " + origin) {}
};

// One phrase pair per contiguous span [i, i+k), 1 <= k <= min(Lmax, len).
// The corpus is positionally aligned, so spans translate span-for-span.
inline std::vector<std::pair<std::string, std::string>> extract_phrases(
    const ParallelPair& pair, int lmax) {
  if (pair.source.size() != pair.target.size()) throw LengthMismatch(pair.origin);
  const int len = static_cast<int>(pair.source.size());
  std::vector<std::pair<std::string, std::string>> out;
  for (int k = 1; k <= std::min(lmax, len); ++k) {
    for (int i = 0; i + k <= len; ++i) {
      std::string src, tgt;
      for (int j = i; j < i + k; ++j) {
        if (j > i) {
          src += ' ';
          tgt += ' ';
        }
        src += pair.source[j].text;
        tgt += pair.target[j].text;
      }
      out.emplace_back(std::move(src), std::move(tgt));
    }
  }
  return out;
}

struct PhraseEntry {
  std::string target;  // space-joined target tokens
  long count = 0;
  double p_fwd = 0.0;  // P(target | source)
  double p_rev = 0.0;  // P(source | target)
};

struct PhraseTable {
  int lmax = 4;
  std::map<std::string, std::vector<PhraseEntry>> entries;  // source phrase ->

  const std::vector<PhraseEntry>* find(const std::string& source_phrase) const {
    auto it = entries.find(source_phrase);
    return it == entries.end() ? nullptr : &it->second;
  }

  // Candidate lists are kept in (p_fwd desc, target asc) order.
  void sort_entries() {
    for (auto& [src, list] : entries)
      std::sort(list.begin(), list.end(), [](const PhraseEntry& a, const PhraseEntry& b) {
        if (a.p_fwd != b.p_fwd) return a.p_fwd > b.p_fwd;
        return a.target < b.target;
      });
  }
};

}  // namespace m2c
