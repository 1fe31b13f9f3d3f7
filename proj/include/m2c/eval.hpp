#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/corpus.hpp"
#include "m2c/decoder.hpp"

namespace m2c {

class EmptySplit : public std::runtime_error {
 public:
  EmptySplit() : std::runtime_error("corpus split left one side empty") {}
};

class MalformedPair : public std::runtime_error {
 public:
  explicit MalformedPair(const std::string& why) : std::runtime_error(why) {}
};

struct EvalCounts {
  long correct = 0;
  long incorrect = 0;
  long oo_source = 0;
  long oo_target = 0;

  long oovoc() const { return oo_source + oo_target; }
  long total() const { return correct + incorrect + oovoc(); }

  EvalCounts& operator+=(const EvalCounts& o) {
    correct += o.correct;
    incorrect += o.incorrect;
    oo_source += o.oo_source;
    oo_target += o.oo_target;
    return *this;
  }
};

struct EvalReport {
  std::map<std::string, EvalCounts> per_library;

  EvalCounts total() const {
    EvalCounts t;
    for (const auto& [lib, c] : per_library) t += c;
    return t;
  }
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// precision = C/(C+I), recall = C/(C+OOVoc), f1 = harmonic mean; 0/0 is 0.
inline Metrics compute_metrics(const EvalCounts& c) {
  Metrics m;
  auto ratio = [](long num, long den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(c.correct, c.correct + c.incorrect);
  m.recall = ratio(c.correct, c.correct + c.oovoc());
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

// Deterministic pseudo-random assignment keyed by (seed, origin hash); the
// partition is identical on every run and platform.
inline std::pair<std::vector<ParallelPair>, std::vector<ParallelPair>> split_corpus(
    const std::vector<ParallelPair>& pairs, double test_fraction, long seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must be in (0, 1)");
  std::vector<ParallelPair> train, test;
  for (const auto& p : pairs) {
    std::uint64_t h = fnv1a64(std::to_string(seed) + ":" + p.origin);
    double u = static_cast<double>(h % 1000000ull) / 1e6;
    (u < test_fraction ? test : train).push_back(p);
  }
  if (train.empty() || test.empty()) throw EmptySplit();
  return {std::move(train), std::move(test)};
}

enum class Outcome { Correct, Incorrect, OOSource, OOTarget };

// Per-invocation outcome. Precedence: source-vocabulary miss on the
// method-name token, then reference-target-vocabulary miss, then decode and
// compare the token aligned with the invocation position.
inline Outcome classify_instance(const TranslationModel& model, const ParallelPair& pair,
                                 int beam = 16) {
  int name_index = -1;
  for (std::size_t i = 0; i < pair.source.size(); ++i) {
    if (pair.source[i].text.find("#iden") != std::string::npos) {
      if (name_index >= 0) throw MalformedPair("pair has multiple method-name tokens");
      name_index = static_cast<int>(i);
    }
  }
  if (name_index < 0) throw MalformedPair("pair has no method-name token");
  if (pair.source.size() != pair.target.size())
    throw MalformedPair("pair sides have different lengths");

  const std::string& src_tok = pair.source[name_index].text;
  const std::string& ref_tok = pair.target[name_index].text;
  if (!model.source_vocab.count(src_tok)) return Outcome::OOSource;
  if (!model.target_vocab.count(ref_tok)) return Outcome::OOTarget;

  std::vector<std::string> source;
  source.reserve(pair.source.size());
  for (const auto& t : pair.source) source.push_back(t.text);
  Translation tr = decode(model, source, beam);

  for (const auto& seg : tr.segmentation) {
    if (name_index < seg.src_begin || name_index >= seg.src_begin + seg.src_len) continue;
    std::vector<std::string> toks = split(seg.target_phrase, ' ');
    if (static_cast<int>(toks.size()) != seg.src_len) return Outcome::Incorrect;
    return toks[name_index - seg.src_begin] == ref_tok ? Outcome::Correct
                                                       : Outcome::Incorrect;
  }
  return Outcome::Incorrect;
}

inline EvalReport evaluate(const TranslationModel& model,
                           const std::vector<ParallelPair>& test_pairs, int beam = 16) {
  EvalReport report;
  for (const auto& p : test_pairs) {
    EvalCounts& c = report.per_library[p.library];
    switch (classify_instance(model, p, beam)) {
      case Outcome::Correct: ++c.correct; break;
      case Outcome::Incorrect: ++c.incorrect; break;
      case Outcome::OOSource: ++c.oo_source; break;
      case Outcome::OOTarget: ++c.oo_target; break;
    }
  }
  return report;
}

// Percentage with two decimals, round-half-up.
inline std::string format_pct(double fraction) {
  double pct = fraction * 100.0;
  double rounded = std::floor(pct * 100.0 + 0.5) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", rounded);
  return buf;
}

inline std::string report_row(const std::string& label, const EvalCounts& c) {
  Metrics m = compute_metrics(c);
  std::string out = label;
  for (long v : {c.correct, c.incorrect, c.oo_source, c.oo_target, c.oovoc(), c.total()})
    out += "\t" + std::to_string(v);
  out += "\t" + format_pct(m.precision) + "\t" + format_pct(m.recall) + "\t" +
         format_pct(m.f1);
  return out;
}

inline const char* report_header() {
  return "Library\tCorrect\tIncorrect\tOOSource\tOOTarget\tOOVoc\tTotal\tPrecision\tRecall\tF1";
}

inline void emit_report(const EvalReport& report, std::ostream& out) {
  out << report_header() << "\n";
  for (const auto& [lib, counts] : report.per_library)
    out << report_row(lib, counts) << "\n";
  out << report_row("Total", report.total()) << "\n";
}

inline void emit_report_file(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  emit_report(report, out);
}

}  // namespace m2c
