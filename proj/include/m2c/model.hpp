#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/ngram.hpp"
#include "m2c/phrase_table.hpp"

namespace m2c {

class EmptyCorpus : public std::runtime_error {
 public:
  EmptyCorpus() : std::runtime_error("no usable pairs in training corpus") {}
};

class ModelError : public std::runtime_error {
 public:
  enum Code { UnsupportedVersion, CorruptModel };

  ModelError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct Weights {
  double fwd = 1.0;
  double rev = 1.0;
  double lm = 1.0;
  double len = 0.0;
};

struct TranslationModel {
  PhraseTable table;
  NGramModel lm{3};
  std::set<std::string> source_vocab;
  std::set<std::string> target_vocab;
  std::map<std::string, long> name_counts;  // method name -> training count
  Weights weights;
  int format_version = 1;
};

inline std::string method_name_of(const std::string& source_token) {
  auto pos = source_token.find("#iden");
  return pos == std::string::npos ? std::string() : source_token.substr(0, pos);
}

/// Relative-frequency phrase probabilities in both directions plus a
/// Witten-Bell LM over target sentences. Counting is order-independent, so
/// any shard order trains the identical model.
inline TranslationModel train(const std::vector<ParallelPair>& corpus, int lmax = 4,
                              int ngram_order = 3) {
  TranslationModel model;
  model.table.lmax = lmax;
  model.lm = NGramModel(ngram_order);

  std::map<std::string, std::map<std::string, long>> joint;
  std::map<std::string, long> target_marginal;
  long usable = 0;

  for (const auto& pair : corpus) {
    std::vector<std::pair<std::string, std::string>> phrases;
    try {
      phrases = extract_phrases(pair, lmax);
    } catch (const LengthMismatch&) {
      continue;  // corrupt pair, rejected
    }
    ++usable;
    for (auto& [s, t] : phrases) joint[s][t] += 1;

    std::vector<std::string> target_tokens;
    target_tokens.reserve(pair.target.size());
    for (const auto& tok : pair.target) target_tokens.push_back(tok.text);
    model.lm.add_sentence(target_tokens);

    for (const auto& tok : pair.source) {
      model.source_vocab.insert(tok.text);
      std::string name = method_name_of(tok.text);
      if (!name.empty()) model.name_counts[name] += 1;
    }
    for (const auto& tok : pair.target) model.target_vocab.insert(tok.text);
  }
  if (usable == 0) throw EmptyCorpus();

  for (const auto& [src, tmap] : joint)
    for (const auto& [tgt, c] : tmap) target_marginal[tgt] += c;

  for (const auto& [src, tmap] : joint) {
    long src_total = 0;
    for (const auto& [tgt, c] : tmap) src_total += c;
    auto& list = model.table.entries[src];
    for (const auto& [tgt, c] : tmap) {
      PhraseEntry e;
      e.target = tgt;
      e.count = c;
      e.p_fwd = static_cast<double>(c) / static_cast<double>(src_total);
      e.p_rev = static_cast<double>(c) / static_cast<double>(target_marginal[tgt]);
      list.push_back(std::move(e));
    }
  }
  model.table.sort_entries();
  return model;
}

namespace detail {

inline void emit_sorted(std::string& out, std::vector<std::string>& lines) {
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  lines.clear();
}

}  // namespace detail

// Line-oriented model file: header, sorted sections, trailing FNV-1a
// checksum over every preceding byte. Identical models serialize to
// byte-identical files.
inline std::string serialize_model(const TranslationModel& model) {
  std::string out = "M2C-MODEL v" + std::to_string(model.format_version) + "\n";
  std::vector<std::string> lines;

  out += "[WEIGHTS]\n";
  lines.push_back("fwd " + fmt_double(model.weights.fwd));
  lines.push_back("len " + fmt_double(model.weights.len));
  lines.push_back("lm " + fmt_double(model.weights.lm));
  lines.push_back("lmax " + std::to_string(model.table.lmax));
  lines.push_back("rev " + fmt_double(model.weights.rev));
  detail::emit_sorted(out, lines);

  out += "[VOCAB-SRC]\n";
  for (const auto& t : model.source_vocab) lines.push_back(t);
  detail::emit_sorted(out, lines);

  out += "[VOCAB-TGT]\n";
  for (const auto& t : model.target_vocab) lines.push_back(t);
  detail::emit_sorted(out, lines);

  out += "[PHRASES]\n";
  for (const auto& [src, list] : model.table.entries)
    for (const auto& e : list)
      lines.push_back(src + " ||| " + e.target + " ||| " + std::to_string(e.count) + " " +
                      fmt_double(e.p_fwd) + " " + fmt_double(e.p_rev));
  detail::emit_sorted(out, lines);

  out += "[LM]\n";
  out += std::to_string(model.lm.order()) + "\n";
  for (const auto& [hist, words] : model.lm.counts())
    for (const auto& [w, c] : words)
      lines.push_back(hist + " ||| " + w + " ||| " + std::to_string(c));
  detail::emit_sorted(out, lines);

  out += "[NAMES]\n";
  for (const auto& [name, count] : model.name_counts)
    lines.push_back(name + " ||| " + std::to_string(count));
  detail::emit_sorted(out, lines);

  out += "[CHECKSUM]\n";
  out += to_hex16(fnv1a64(out)) + "\n";
  return out;
}

inline TranslationModel deserialize_model(const std::string& content) {
  std::size_t mark = content.rfind("[CHECKSUM]\n");
  if (mark == std::string::npos || (mark != 0 && content[mark - 1] != '\n'))
    throw ModelError(ModelError::CorruptModel, "missing checksum section");
  std::string body = content.substr(0, mark);
  std::string tail = content.substr(mark + 11);
  while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.pop_back();
  std::string expected = to_hex16(fnv1a64(body + "[CHECKSUM]\n"));
  if (tail != expected)
    throw ModelError(ModelError::CorruptModel, "checksum mismatch");

  std::vector<std::string> all_lines = split(body, '\n');
  if (!all_lines.empty() && all_lines.back().empty()) all_lines.pop_back();
  if (all_lines.empty())
    throw ModelError(ModelError::CorruptModel, "empty model file");
  if (all_lines[0] != "M2C-MODEL v1") {
    if (all_lines[0].starts_with("M2C-MODEL "))
      throw ModelError(ModelError::UnsupportedVersion,
                       "unsupported model version: " + all_lines[0]);
    throw ModelError(ModelError::CorruptModel, "bad model header");
  }

  TranslationModel model;
  std::string section;
  bool lm_order_seen = false;
  auto corrupt = [](const std::string& why) {
    return ModelError(ModelError::CorruptModel, why);
  };

  for (std::size_t li = 1; li < all_lines.size(); ++li) {
    const std::string& line = all_lines[li];
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line;
      if (section == "[LM]") lm_order_seen = false;
      continue;
    }
    if (section == "[WEIGHTS]") {
      auto sp = line.find(' ');
      if (sp == std::string::npos) throw corrupt("bad weight line");
      std::string key = line.substr(0, sp);
      std::string val = line.substr(sp + 1);
      if (key == "fwd") model.weights.fwd = std::strtod(val.c_str(), nullptr);
      else if (key == "rev") model.weights.rev = std::strtod(val.c_str(), nullptr);
      else if (key == "lm") model.weights.lm = std::strtod(val.c_str(), nullptr);
      else if (key == "len") model.weights.len = std::strtod(val.c_str(), nullptr);
      else if (key == "lmax") model.table.lmax = std::atoi(val.c_str());
      else throw corrupt("unknown weight: " + key);
    } else if (section == "[VOCAB-SRC]") {
      model.source_vocab.insert(line);
    } else if (section == "[VOCAB-TGT]") {
      model.target_vocab.insert(line);
    } else if (section == "[PHRASES]") {
      auto f = split_on(line, " ||| ");
      if (f.size() != 3) throw corrupt("bad phrase line");
      auto nums = split(f[2], ' ');
      if (nums.size() != 3) throw corrupt("bad phrase scores");
      PhraseEntry e;
      e.target = f[1];
      e.count = std::atol(nums[0].c_str());
      e.p_fwd = std::strtod(nums[1].c_str(), nullptr);
      e.p_rev = std::strtod(nums[2].c_str(), nullptr);
      model.table.entries[f[0]].push_back(std::move(e));
    } else if (section == "[LM]") {
      if (!lm_order_seen) {
        model.lm = NGramModel(std::atoi(line.c_str()));
        lm_order_seen = true;
        continue;
      }
      auto f = split_on(line, " ||| ");
      if (f.size() != 3) throw corrupt("bad LM line");
      model.lm.add_count(f[0], f[1], std::atol(f[2].c_str()));
    } else if (section == "[NAMES]") {
      auto f = split_on(line, " ||| ");
      if (f.size() != 2) throw corrupt("bad name line");
      model.name_counts[f[0]] = std::atol(f[1].c_str());
    } else {
      throw corrupt("unknown section: " + section);
    }
  }
  model.table.sort_entries();
  return model;
}

inline void save_model(const TranslationModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model: " + path);
  out << serialize_model(model);
}

inline TranslationModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace m2c
