#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "m2c/corpus.hpp"
#include "m2c/eval.hpp"
#include "m2c/service.hpp"

namespace m2c {

// Exit codes: 0 success, 2 missing/unreadable inputs, 3 corrupt or
// unsupported model file.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitModel = 3;

struct RunConfig {
  std::string subcommand;
  std::string corpus_dir;
  std::string typedb_path;
  std::string pairs_path;
  std::string model_path;
  std::string report_path;
  std::string test_path;
  std::string out_path;

  int lmax = 4;
  int ngram_order = 3;
  int beam = 16;
  int k = 5;
  int port = 8080;
  std::optional<double> test_fraction;  // eval: evaluate a held-out split only
  long seed = 42;

  std::string name;  // translate: confirmed method name
  std::string text;  // suggest: free-text description
  std::vector<std::string> variables;
  std::vector<std::string> words;
  std::vector<std::string> context;
};

namespace detail {

inline std::optional<TranslationModel> load_model_or_report(const std::string& path,
                                                            std::ostream& err, int* rc) {
  try {
    return load_model(path);
  } catch (const ModelError& e) {
    err << "m2c: " << e.what() << "\n";
    *rc = kExitModel;
  } catch (const std::exception& e) {
    err << "m2c: " << e.what() << "\n";
    *rc = kExitInput;
  }
  return std::nullopt;
}

}  // namespace detail

inline int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)out;
  try {
    if (!std::filesystem::is_directory(cfg.corpus_dir)) {
      err << "m2c: corpus directory not found: " << cfg.corpus_dir << "\n";
      return kExitInput;
    }
    TypeDatabase db = TypeDatabase::load(cfg.typedb_path);
    ExtractionStats stats;
    std::vector<ParallelPair> pairs = build_corpus(cfg.corpus_dir, db, stats, &err);
    write_pairs_file(cfg.out_path, pairs);
    if (pairs.empty()) err << "m2c: warning: no pairs extracted\n";
    err << "extract: " << stats.summary() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "m2c: " << e.what() << "\n";
    return kExitInput;
  }
}

inline int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)out;
  try {
    std::vector<ParallelPair> pairs = read_pairs_file(cfg.pairs_path);
    TranslationModel model = train(pairs, cfg.lmax, cfg.ngram_order);
    save_model(model, cfg.out_path);
    err << "train: pairs=" << pairs.size()
        << " phrases=" << model.table.entries.size()
        << " names=" << model.name_counts.size() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "m2c: " << e.what() << "\n";
    return kExitInput;
  }
}

inline int cmd_translate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto model = detail::load_model_or_report(cfg.model_path, err, &rc);
  if (!model) return rc;
  Service service(std::move(*model), cfg.beam);

  DeveloperQuery q;
  q.chosen_name = cfg.name;
  q.variables = cfg.variables;
  q.words = cfg.words;
  q.context = cfg.context;

  nlohmann::json result = service.translate_json(q);
  out << "display: " << result["display"].get<std::string>() << "\n";
  out << "target: " << result["raw_target"].get<std::string>() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", result["score"].get<double>());
  out << "score: " << buf << "\n";
  return kExitOk;
}

inline int cmd_suggest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto model = detail::load_model_or_report(cfg.model_path, err, &rc);
  if (!model) return rc;
  try {
    NameIndex index = NameIndex::build(model->name_counts);
    for (const auto& s : suggest(index, cfg.text, cfg.k)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", s.score);
      out << s.name << "\t" << buf << "\n";
    }
    return kExitOk;
  } catch (const EmptyIndex& e) {
    err << "m2c: " << e.what() << "\n";
    return kExitInput;
  }
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto model = detail::load_model_or_report(cfg.model_path, err, &rc);
  if (!model) return rc;
  try {
    std::vector<ParallelPair> pairs = read_pairs_file(cfg.test_path);
    if (cfg.test_fraction) {
      auto [train_side, test_side] = split_corpus(pairs, *cfg.test_fraction, cfg.seed);
      pairs = std::move(test_side);
    }
    EvalReport report = evaluate(*model, pairs, cfg.beam);
    emit_report_file(report, cfg.report_path);
    out << report_row("Total", report.total()) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "m2c: " << e.what() << "\n";
    return kExitInput;
  }
}

inline int cmd_serve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int rc = kExitOk;
  auto model = detail::load_model_or_report(cfg.model_path, err, &rc);
  if (!model) return rc;
  auto service = std::make_shared<Service>(std::move(*model), cfg.beam);
  httplib::Server server;
  register_routes(server, service);
  err << "m2c: serving on port " << cfg.port << "\n";
  (void)out;
  if (!server.listen("0.0.0.0", cfg.port)) {
    err << "m2c: cannot bind port " << cfg.port << "\n";
    return kExitInput;
  }
  return kExitOk;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.subcommand == "extract") return cmd_extract(cfg, out, err);
  if (cfg.subcommand == "train") return cmd_train(cfg, out, err);
  if (cfg.subcommand == "translate") return cmd_translate(cfg, out, err);
  if (cfg.subcommand == "suggest") return cmd_suggest(cfg, out, err);
  if (cfg.subcommand == "eval") return cmd_eval(cfg, out, err);
  if (cfg.subcommand == "serve") return cmd_serve(cfg, out, err);
  err << "m2c: unknown subcommand: " << cfg.subcommand << "\n";
  return kExitInput;
}

}  // namespace m2c
