#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/encoder.hpp"

namespace m2c {

struct ExtractionStats {
  long files_read = 0;
  long files_skipped = 0;
  long sites_extracted = 0;
  long sites_dropped = 0;
  long pairs_emitted = 0;
  std::map<std::string, long> drop_reasons;

  std::string summary() const {
    std::ostringstream os;
    os << "files=" << files_read << " skipped=" << files_skipped
       << " sites=" << sites_extracted << " dropped=" << sites_dropped
       << " pairs=" << pairs_emitted;
    return os.str();
  }
};

inline std::string pair_to_tsv(const ParallelPair& pair) {
  auto field = [](const std::vector<PairTok>& toks) {
    std::vector<std::string> esc;
    esc.reserve(toks.size());
    for (const auto& t : toks) esc.push_back(tsv_escape(t.text));
    return join(esc, " ");
  };
  return pair.library + "\t" + pair.origin + "\t" + field(pair.source) + "\t" +
         field(pair.target);
}

inline ParallelPair pair_from_tsv(const std::string& line, int lineno = 0) {
  std::vector<std::string> f = split(line, '\t');
  if (f.size() != 4)
    throw std::runtime_error("corpus line " + std::to_string(lineno) +
                             ": expected 4 tab-separated fields");
  ParallelPair p;
  p.library = f[0];
  p.origin = f[1];
  for (const auto& tok : split(f[2], ' '))
    if (!tok.empty()) p.source.push_back({classify_source_token(percent_unescape(tok)),
                                          percent_unescape(tok)});
  for (const auto& tok : split(f[3], ' '))
    if (!tok.empty()) p.target.push_back({PairKind::Structural, percent_unescape(tok)});
  // Kinds mirror the source side index-wise when lengths agree.
  if (p.source.size() == p.target.size())
    for (std::size_t i = 0; i < p.target.size(); ++i)
      p.target[i].kind = p.source[i].kind;
  return p;
}

inline void write_pairs(std::ostream& out, const std::vector<ParallelPair>& pairs) {
  for (const auto& p : pairs) out << pair_to_tsv(p) << "\n";
}

inline void write_pairs_file(const std::string& path, const std::vector<ParallelPair>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus: " + path);
  write_pairs(out, pairs);
}

inline std::vector<ParallelPair> read_pairs(std::istream& in) {
  std::vector<ParallelPair> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    pairs.push_back(pair_from_tsv(line, lineno));
  }
  return pairs;
}

inline std::vector<ParallelPair> read_pairs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus: " + path);
  return read_pairs(in);
}

/// Extracts and encodes every invocation in one source text.
inline std::vector<ParallelPair> encode_source_text(const std::string& text,
                                                    const std::string& origin_file,
                                                    const TypeDatabase& db,
                                                    ExtractionStats* stats = nullptr) {
  FileAnalysis fa = analyze_source(text, origin_file);
  Encoder enc(db);
  std::vector<ParallelPair> pairs;
  for (const auto& site : fa.sites) {
    if (stats) ++stats->sites_extracted;
    std::string origin = origin_file + ":" + std::to_string(site.line);
    Encoder::SitePairs sp = enc.encode_site(fa, site, origin);
    if (sp.pairs.empty()) {
      if (stats) {
        ++stats->sites_dropped;
        ++stats->drop_reasons[sp.drop_reason];
      }
      continue;
    }
    for (auto& p : sp.pairs) {
      if (stats) ++stats->pairs_emitted;
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

// Walks a directory tree of .java files in sorted order; lexically broken
// files are skipped and counted, never fatal.
inline std::vector<ParallelPair> build_corpus(const std::string& corpus_dir,
                                              const TypeDatabase& db,
                                              ExtractionStats& stats,
                                              std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(corpus_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<ParallelPair> pairs;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++stats.files_skipped;
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    ++stats.files_read;
    std::string rel = fs::relative(path, corpus_dir).generic_string();
    try {
      auto file_pairs = encode_source_text(buf.str(), rel, db, &stats);
      pairs.insert(pairs.end(), file_pairs.begin(), file_pairs.end());
    } catch (const LexError& e) {
      ++stats.files_skipped;
      if (log) *log << "skip " << rel << ": " << e.what() << "\n";
    }
  }
  return pairs;
}

}  // namespace m2c
