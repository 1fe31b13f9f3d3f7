#include <iostream>

#include <CLI11.hpp>

#include "m2c/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MethodInfoToCode: infer method-invocation expressions from names"};
  app.footer("Exit codes: 0 success, 2 missing or unreadable inputs, "
             "3 corrupt or unsupported model file.");
  app.require_subcommand(1);
  m2c::RunConfig cfg;
  double test_fraction = -1.0;

  auto* extract = app.add_subcommand("extract", "Mine a parallel corpus from .java sources");
  extract->add_option("--corpus", cfg.corpus_dir, "Directory tree of .java files")->required();
  extract->add_option("--typedb", cfg.typedb_path, "Type database TSV")->required();
  extract->add_option("--out", cfg.out_path, "Output corpus TSV")->required();

  auto* train = app.add_subcommand("train", "Train a translation model from a corpus TSV");
  train->add_option("--pairs", cfg.pairs_path, "Parallel corpus TSV")->required();
  train->add_option("--out", cfg.out_path, "Output model file")->required();
  train->add_option("--lmax", cfg.lmax, "Maximum phrase length")->check(CLI::PositiveNumber);
  train->add_option("--ngram", cfg.ngram_order, "Language model order")
      ->check(CLI::PositiveNumber);

  auto* translate = app.add_subcommand("translate", "Translate a confirmed method name");
  translate->add_option("--model", cfg.model_path, "Model file")->required();
  translate->add_option("--name", cfg.name, "Confirmed method name")->required();
  translate->add_option("--var", cfg.variables, "Variable type the result should use");
  translate->add_option("--word", cfg.words, "Suggested word (operator or literal)");
  translate->add_option("--context", cfg.context,
                        "Source context token; use #name to mark the invocation position");
  translate->add_option("--beam", cfg.beam, "Decoder beam width")->check(CLI::PositiveNumber);

  auto* suggest = app.add_subcommand("suggest", "Rank method names for a textual description");
  suggest->add_option("--model", cfg.model_path, "Model file")->required();
  suggest->add_option("--text", cfg.text, "Textual description, e.g. \"get bit map\"")
      ->required();
  suggest->add_option("-k,--k", cfg.k, "Number of suggestions")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "Evaluate a model on a test corpus TSV");
  eval->add_option("--model", cfg.model_path, "Model file")->required();
  eval->add_option("--test", cfg.test_path, "Test corpus TSV")->required();
  eval->add_option("--report", cfg.report_path, "Output report TSV")->required();
  eval->add_option("--beam", cfg.beam, "Decoder beam width")->check(CLI::PositiveNumber);
  auto* fraction_opt = eval->add_option(
      "--test-fraction", test_fraction,
      "Evaluate only the held-out fraction of --test (deterministic by --seed)");
  eval->add_option("--seed", cfg.seed, "Split seed");

  auto* serve = app.add_subcommand("serve", "Serve /health, /suggest and /translate over HTTP");
  serve->add_option("--model", cfg.model_path, "Model file")->required();
  serve->add_option("--port", cfg.port, "Port to listen on")->check(CLI::PositiveNumber);
  serve->add_option("--beam", cfg.beam, "Decoder beam width")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (fraction_opt->count() > 0) cfg.test_fraction = test_fraction;
  return m2c::run(cfg, std::cout, std::cerr);
}
