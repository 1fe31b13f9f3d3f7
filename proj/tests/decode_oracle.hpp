#pragma once

// Test-only exhaustive decoder: enumerates every monotone segmentation and
// phrase choice, scoring with the same accumulation order as the beam
// decoder so exact ties resolve identically. Independent of the search code
// under test.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "m2c/decoder.hpp"

namespace m2c_test {

struct OracleBest {
  std::vector<std::string> target;
  std::string joined;
  double score = 0.0;
  bool found = false;
};

inline void oracle_walk(const m2c::TranslationModel& model,
                        const std::vector<std::string>& source, std::size_t pos,
                        double score, std::vector<std::string>& target,
                        std::vector<std::string>& state, OracleBest& best) {
  const m2c::Weights& w = model.weights;
  if (pos == source.size()) {
    double final_score = score + w.lm * model.lm.logp(state, m2c::NGramModel::kEos);
    std::string joined = m2c::join(target, " ");
    if (!best.found || final_score > best.score ||
        (final_score == best.score && joined < best.joined)) {
      best.found = true;
      best.score = final_score;
      best.target = target;
      best.joined = joined;
    }
    return;
  }

  auto extend = [&](const std::string& phrase, double phrase_score, std::size_t next_pos) {
    std::vector<std::string> saved_state = state;
    std::size_t saved_len = target.size();
    double s = score + phrase_score;
    for (const auto& tok : m2c::split(phrase, ' ')) {
      s += w.lm * model.lm.logp(state, tok) + w.len;
      model.lm.advance(state, tok);
      target.push_back(tok);
    }
    oracle_walk(model, source, next_pos, s, target, state, best);
    target.resize(saved_len);
    state = std::move(saved_state);
  };

  int max_k = std::min<int>(model.table.lmax, static_cast<int>(source.size() - pos));
  for (int k = 1; k <= max_k; ++k) {
    std::string span = source[pos];
    for (int t = 1; t < k; ++t) span += " " + source[pos + t];
    const auto* cands = model.table.find(span);
    if (!cands) continue;
    for (const auto& e : *cands)
      extend(e.target, w.fwd * std::log(e.p_fwd) + w.rev * std::log(e.p_rev), pos + k);
  }
  if (!model.source_vocab.count(source[pos]))
    extend(source[pos] + "#OOV", m2c::kOovLogPenalty, pos + 1);
}

inline OracleBest oracle_decode(const m2c::TranslationModel& model,
                                const std::vector<std::string>& source) {
  OracleBest best;
  std::vector<std::string> target;
  std::vector<std::string> state = model.lm.initial_state();
  oracle_walk(model, source, 0, 0.0, target, state, best);
  return best;
}

// Small random models: <= 8 phrase entries over tiny alphabets, probabilities
// derived from integer counts, LM trained on random target sentences.
inline m2c::TranslationModel random_tiny_model(std::mt19937& rng) {
  m2c::TranslationModel model;
  model.table.lmax = 2;
  int order = 1 + static_cast<int>(rng() % 3);
  model.lm = m2c::NGramModel(order);

  std::vector<std::string> src_alpha = {"s0", "s1", "s2", "s3"};
  std::vector<std::string> tgt_alpha = {"t0", "t1", "t2", "t3", "t4"};

  auto tgt_phrase = [&]() {
    std::string p = tgt_alpha[rng() % tgt_alpha.size()];
    if (rng() % 3 == 0) p += " " + tgt_alpha[rng() % tgt_alpha.size()];
    return p;
  };

  // Mirror trained-table structure: every token reachable through the table
  // has a unigram entry, as positional phrase extraction guarantees.
  std::map<std::string, std::map<std::string, long>> joint;
  int budget = 1 + static_cast<int>(rng() % 8);
  int wanted = 1 + static_cast<int>(rng() % 4);
  int covered = 0;
  for (; covered < wanted && budget > 0; ++covered, --budget)
    joint[src_alpha[covered]][tgt_phrase()] += 1 + static_cast<long>(rng() % 5);
  while (budget-- > 0) {
    std::string src = src_alpha[rng() % covered];
    if (rng() % 3 == 0) src += " " + src_alpha[rng() % covered];
    joint[src][tgt_phrase()] += 1 + static_cast<long>(rng() % 5);
  }

  std::map<std::string, long> tgt_marginal;
  for (const auto& [s, tmap] : joint)
    for (const auto& [t, c] : tmap) tgt_marginal[t] += c;
  for (const auto& [s, tmap] : joint) {
    long total = 0;
    for (const auto& [t, c] : tmap) total += c;
    for (const auto& [t, c] : tmap) {
      m2c::PhraseEntry e;
      e.target = t;
      e.count = c;
      e.p_fwd = static_cast<double>(c) / total;
      e.p_rev = static_cast<double>(c) / tgt_marginal[t];
      model.table.entries[s].push_back(e);
    }
    for (const auto& tok : m2c::split(s, ' ')) model.source_vocab.insert(tok);
  }
  model.table.sort_entries();

  int sentences = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < sentences; ++i) {
    std::vector<std::string> sent;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < len; ++j) sent.push_back(tgt_alpha[rng() % tgt_alpha.size()]);
    model.lm.add_sentence(sent);
  }
  for (const auto& [s, list] : model.table.entries)
    for (const auto& e : list)
      for (const auto& tok : m2c::split(e.target, ' ')) model.target_vocab.insert(tok);

  const double weight_choices[] = {0.5, 1.0, 2.0};
  model.weights.fwd = weight_choices[rng() % 3];
  model.weights.rev = weight_choices[rng() % 3];
  model.weights.lm = weight_choices[rng() % 3];
  model.weights.len = (rng() % 2) ? 0.0 : -0.25;
  return model;
}

inline std::vector<std::string> random_source(std::mt19937& rng, int max_len = 5) {
  std::vector<std::string> alpha = {"s0", "s1", "s2", "s3", "zz0", "zz1"};
  std::vector<std::string> out;
  int len = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < len; ++i) out.push_back(alpha[rng() % alpha.size()]);
  return out;
}

}  // namespace m2c_test
