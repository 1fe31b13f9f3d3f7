#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "m2c/text.hpp"

namespace m2c {

// Backoff n-gram model with Witten-Bell discounting. For an observed history
// h with total count c, T distinct followers and event space E (vocabulary
// plus `<unk>`, `<s>` excluded):
//
//   P(w|h) = c(h,w) / (c + T)          when w was seen after h
//   P(w|h) = T / ((c + T) * (|E| - T)) otherwise
//
// Unobserved histories back off to their longest observed suffix. `<unk>` is
// never a training event, so the unseen share is always well defined and the
// distribution sums to one exactly for every observed history.
class NGramModel {
 public:
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kUnk = "<unk>";

  explicit NGramModel(int order = 3) : order_(order < 1 ? 1 : order) {}

  int order() const { return order_; }

  const std::map<std::string, std::map<std::string, long>>& counts() const { return counts_; }
  const std::set<std::string>& vocab() const { return vocab_; }

  void add_count(const std::string& history, const std::string& word, long count) {
    auto [it, inserted] = counts_[history].try_emplace(word, 0);
    it->second += count;
    HistStats& hs = stats_[history];
    hs.total += count;
    if (inserted) hs.distinct += 1;
    if (word != kBos && word != kUnk) vocab_.insert(word);
  }

  void add_sentence(const std::vector<std::string>& sentence) {
    std::vector<std::string> full;
    full.reserve(sentence.size() + order_);
    for (int i = 0; i < order_ - 1; ++i) full.push_back(kBos);
    for (const auto& w : sentence) full.push_back(w);
    full.push_back(kEos);

    for (std::size_t idx = static_cast<std::size_t>(order_ - 1); idx < full.size(); ++idx) {
      const std::string& word = full[idx];
      for (int k = 0; k < order_; ++k) {
        std::vector<std::string> hist(full.begin() + idx - k, full.begin() + idx);
        add_count(join(hist, " "), word, 1);
      }
    }
  }

  std::vector<std::string> initial_state() const {
    return std::vector<std::string>(static_cast<std::size_t>(order_ - 1), kBos);
  }

  void advance(std::vector<std::string>& state, const std::string& word) const {
    if (order_ <= 1) return;
    state.push_back(vocab_.count(word) ? word : kUnk);
    while (state.size() > static_cast<std::size_t>(order_ - 1)) state.erase(state.begin());
  }

  // ln P(word | state), backing off to the longest observed history suffix.
  // Read-only and safe to call concurrently once the model is built.
  double logp(const std::vector<std::string>& state, const std::string& word) const {
    const std::string w = vocab_.count(word) ? word : kUnk;
    const double events = static_cast<double>(vocab_.size()) + 1.0;  // + <unk>

    int max_k = std::min<int>(order_ - 1, static_cast<int>(state.size()));
    for (int k = max_k; k >= 0; --k) {
      std::vector<std::string> hist(state.end() - k, state.end());
      auto it = counts_.find(join(hist, " "));
      if (it == counts_.end()) continue;
      const HistStats& hs = stats_.at(it->first);
      auto wit = it->second.find(w);
      long cw = wit == it->second.end() ? 0 : wit->second;
      double denom = static_cast<double>(hs.total + hs.distinct);
      if (cw > 0) return std::log(static_cast<double>(cw) / denom);
      double zeros = events - static_cast<double>(hs.distinct);
      return std::log(static_cast<double>(hs.distinct) / (denom * zeros));
    }
    return -std::log(events);  // untrained model: uniform
  }

  // Sum of ln P over the sentence, including the `</s>` transition.
  double sentence_logprob(const std::vector<std::string>& sentence) const {
    std::vector<std::string> state = initial_state();
    double total = 0.0;
    for (const auto& w : sentence) {
      total += logp(state, w);
      advance(state, w);
    }
    total += logp(state, kEos);
    return total;
  }

 private:
  struct HistStats {
    long total = 0;
    long distinct = 0;
  };

  int order_;
  std::map<std::string, std::map<std::string, long>> counts_;
  std::set<std::string> vocab_;
  std::map<std::string, HistStats> stats_;
};

inline double lm_logprob(const NGramModel& lm, const std::vector<std::string>& sentence) {
  return lm.sentence_logprob(sentence);
}

}  // namespace m2c
