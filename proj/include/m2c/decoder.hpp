#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "m2c/model.hpp"

namespace m2c {

inline const double kOovLogPenalty = std::log(1e-6);

struct Segment {
  int src_begin = 0;
  int src_len = 0;
  std::string target_phrase;  // space-joined target tokens
};

struct Translation {
  std::vector<std::string> target;
  double score = 0.0;
  std::vector<Segment> segmentation;
};

// Monotone stack decoding over source positions. Hypotheses covering the same
// prefix recombine on their LM state (future score depends on nothing else),
// each stack is pruned to the `beam` best, and every tie breaks on the
// space-joined target string so decoding is deterministic. Out-of-vocabulary
// source tokens copy through as `<tok>#OOV` with a fixed log penalty, which
// guarantees a complete hypothesis for any input.
inline Translation decode(const TranslationModel& model,
                          const std::vector<std::string>& source, int beam = 16) {
  if (beam < 1) beam = 1;
  const int len = static_cast<int>(source.size());
  const Weights& w = model.weights;
  const NGramModel& lm = model.lm;

  struct Hyp {
    double score = 0.0;
    std::vector<std::string> target;
    std::vector<Segment> segs;
    std::vector<std::string> state;
    std::string joined;
  };
  auto better = [](const Hyp& a, const Hyp& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.joined < b.joined;
  };

  std::vector<std::map<std::string, Hyp>> stacks(len + 1);
  Hyp init;
  init.state = lm.initial_state();
  stacks[0][join(init.state, "\x1f")] = init;

  auto extend = [&](const Hyp& h, int begin, int k, const std::string& target_phrase,
                    double phrase_score) {
    Hyp nh = h;
    nh.score += phrase_score;
    for (const auto& tok : split(target_phrase, ' ')) {
      nh.score += w.lm * lm.logp(nh.state, tok) + w.len;
      lm.advance(nh.state, tok);
      nh.target.push_back(tok);
      if (!nh.joined.empty()) nh.joined += ' ';
      nh.joined += tok;
    }
    nh.segs.push_back({begin, k, target_phrase});
    auto key = join(nh.state, "\x1f");
    auto& slot = stacks[begin + k];
    auto it = slot.find(key);
    if (it == slot.end() || better(nh, it->second)) slot[key] = std::move(nh);
  };

  for (int j = 0; j < len; ++j) {
    std::vector<Hyp> live;
    live.reserve(stacks[j].size());
    for (auto& [key, h] : stacks[j]) live.push_back(h);
    std::sort(live.begin(), live.end(), better);
    if (static_cast<int>(live.size()) > beam) live.resize(beam);

    for (const Hyp& h : live) {
      int max_k = std::min(model.table.lmax, len - j);
      for (int k = 1; k <= max_k; ++k) {
        std::string span = source[j];
        for (int t = 1; t < k; ++t) span += " " + source[j + t];
        const auto* cands = model.table.find(span);
        if (!cands) continue;
        for (const auto& e : *cands)
          extend(h, j, k, e.target,
                 w.fwd * std::log(e.p_fwd) + w.rev * std::log(e.p_rev));
      }
      if (!model.source_vocab.count(source[j]))
        extend(h, j, 1, source[j] + "#OOV", kOovLogPenalty);
    }
  }

  const Hyp* best = nullptr;
  double best_final = 0.0;
  for (const auto& [key, h] : stacks[len]) {
    double final_score = h.score + w.lm * lm.logp(h.state, NGramModel::kEos);
    if (!best || final_score > best_final ||
        (final_score == best_final && h.joined < best->joined)) {
      best = &h;
      best_final = final_score;
    }
  }

  Translation out;
  if (best) {
    out.target = best->target;
    out.score = best_final;
    out.segmentation = best->segs;
  }
  return out;
}

}  // namespace m2c
