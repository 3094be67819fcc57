// Copyright 2026 The scalecheck Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// scalecheck command-line interface.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scalecheck/corpus.h"
#include "scalecheck/error.h"
#include "scalecheck/ngram.h"
#include "scalecheck/pcfg.h"
#include "scalecheck/report.h"
#include "scalecheck/rng.h"
#include "scalecheck/simon_py.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using scalecheck::Error;
using scalecheck::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("scalecheck");
  logger->set_pattern("scalecheck: [%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SCALECHECK_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep the default for typos.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

scalecheck::TableFormat table_format(const std::string& name) {
  return name == "json" ? scalecheck::TableFormat::kJson : scalecheck::TableFormat::kTsv;
}

// ---- analyze

struct AnalyzeArgs {
  std::string input;
  std::string char_input;
  std::size_t taylor_l = 5620;
  std::size_t lrc_q = 16;
  std::uint64_t unk_min_freq = 0;
  bool replace_numbers = false;
  std::string out = ".";
  std::string format = "tsv";
  std::string name;
  std::optional<double> perplexity;
  double log_base = 10.0;
};

int run_analyze(const AnalyzeArgs& args) {
  scalecheck::AnalysisConfig config;
  config.scaling.taylor_l = args.taylor_l;
  config.scaling.lrc_q = args.lrc_q;
  config.scaling.log_base = args.log_base;

  spdlog::info("reading {}", args.input);
  auto words = scalecheck::tokenize_words(scalecheck::read_text_file(args.input));
  if (args.replace_numbers) words = scalecheck::replace_numbers(words, "N");
  if (args.unk_min_freq > 0) words = scalecheck::apply_unk(words, args.unk_min_freq, "<unk>");
  std::optional<scalecheck::TokenSequence> chars;
  if (!args.char_input.empty()) {
    chars = scalecheck::tokenize_chars(scalecheck::read_text_file(args.char_input));
  }
  spdlog::info("{} tokens, {} types", words.size(), words.vocab_size());

  const std::string name = args.name.empty() ? fs::path(args.input).stem().string() : args.name;
  auto report = scalecheck::analyze_all(words, chars ? &*chars : nullptr, config, name);
  report.perplexity = args.perplexity;
  report.metadata.input_path = args.input;
  report.metadata.char_input_path = args.char_input;
  json cfg = report.metadata.config;
  cfg["unk_min_freq"] = args.unk_min_freq;
  cfg["replace_numbers"] = args.replace_numbers;
  report.metadata.config = cfg;

  fs::create_directories(args.out);
  const fs::path dir(args.out);
  write_file((dir / "report.json").string(), scalecheck::report_to_json(report, config).dump(2) + "\n");
  if (report.zipf.result) scalecheck::emit_plot_data(*report.zipf.result, (dir / "zipf.tsv").string());
  if (report.heaps.result) scalecheck::emit_plot_data(*report.heaps.result, (dir / "heaps.tsv").string());
  if (report.ebeling.result) {
    scalecheck::emit_plot_data(*report.ebeling.result, (dir / "ebeling.tsv").string());
  }
  if (report.taylor.result) scalecheck::emit_plot_data(*report.taylor.result, (dir / "taylor.tsv").string());
  if (report.lrc.result) scalecheck::emit_plot_data(*report.lrc.result, (dir / "lrc.tsv").string());

  const std::vector<scalecheck::ModelReport> reports{report};
  scalecheck::TableOptions options;
  options.zeta_threshold = config.zeta_threshold;
  std::cout << scalecheck::summary_table(reports, table_format(args.format), options);

  auto warn_cell = [](std::string_view what, const auto& cell) {
    if (cell.status == scalecheck::CellStatus::kFailed) {
      spdlog::error("{} failed: {} ({})", what, cell.error, cell.message);
    }
  };
  warn_cell("zipf", report.zipf);
  warn_cell("heaps", report.heaps);
  warn_cell("ebeling", report.ebeling);
  warn_cell("taylor", report.taylor);
  warn_cell("lrc", report.lrc);
  return report.any_failed() ? kExitData : kExitOk;
}

// ---- generate

struct GenerateArgs {
  std::string model;
  std::optional<double> a;
  std::optional<double> b;
  std::string model_file;
  std::string grammar;
  std::size_t length = 1'000'000;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t max_depth = 200;
};

int run_generate(const GenerateArgs& args) {
  if (args.length == 0) throw Error(ErrorCode::kInvalidParam, "--length must be positive");
  scalecheck::SeededRng rng(args.seed);
  json meta;
  meta["format"] = "scalecheck-generate";
  meta["format_version"] = scalecheck::kReportFormatVersion;
  meta["model"] = args.model;
  meta["length"] = args.length;
  meta["seed"] = args.seed;
  meta["rng"] = std::string(scalecheck::SeededRng::kAlgorithm);

  scalecheck::TokenSequence tokens;
  if (args.model == "simon") {
    const scalecheck::SimonParams p{args.a.value_or(0.1)};
    scalecheck::validate(p);
    meta["params"] = {{"a", p.a}};
    tokens = scalecheck::simon_generate(p, args.length, rng);
  } else if (args.model == "py") {
    const scalecheck::PyParams p{args.a.value_or(0.8), args.b.value_or(1.0)};
    scalecheck::validate(p);
    meta["params"] = {{"a", p.a}, {"b", p.b}};
    tokens = scalecheck::py_generate(p, args.length, rng);
  } else if (args.model == "ngram") {
    if (args.model_file.empty()) throw Error(ErrorCode::kInvalidParam, "--model-file is required for ngram");
    std::ifstream in(args.model_file, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open " + args.model_file);
    const auto model = scalecheck::NgramModel::load(in);
    meta["params"] = {{"model_file", args.model_file}, {"order", model.order()}, {"discount", model.discount()}};
    tokens = scalecheck::ngram_generate(model, args.length, rng);
  } else {
    if (args.grammar.empty()) throw Error(ErrorCode::kInvalidParam, "--grammar is required for pcfg");
    std::ifstream in(args.grammar, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open " + args.grammar);
    const auto grammar = scalecheck::Pcfg::load(in);
    auto sample = scalecheck::pcfg_generate(grammar, args.length, rng, args.max_depth);
    meta["params"] = {{"grammar", args.grammar}, {"max_depth", args.max_depth}};
    meta["sentences"] = sample.sentences;
    meta["abandoned"] = sample.abandoned;
    // The last sentence may overrun the requested length.
    std::vector<scalecheck::SymbolId> ids(sample.tokens.ids().begin(),
                                          sample.tokens.ids().begin() + static_cast<std::ptrdiff_t>(args.length));
    tokens = scalecheck::TokenSequence(std::move(ids), sample.tokens.shared_vocab(), scalecheck::Level::kWord);
  }
  meta["tokens"] = tokens.size();
  meta["vocabulary"] = tokens.vocab_size();
  write_file(args.out, tokens.render(" ") + "\n");
  write_file(args.out + ".meta.json", meta.dump(2) + "\n");
  spdlog::info("wrote {} tokens ({} types) to {}", tokens.size(), tokens.vocab_size(), args.out);
  return kExitOk;
}

// ---- n-gram tools

int run_train_ngram(const std::string& input, int order, double discount, std::uint64_t unk_min_freq,
                    const std::string& out) {
  auto words = scalecheck::tokenize_words(scalecheck::read_text_file(input));
  if (unk_min_freq > 0) words = scalecheck::apply_unk(words, unk_min_freq, "<unk>");
  const auto model = scalecheck::ngram_train(words, order, discount);
  std::ostringstream buffer;
  model.save(buffer);
  write_file(out, buffer.str());
  spdlog::info("trained order-{} model on {} tokens, {} types", order, words.size(), model.vocab_size());
  return kExitOk;
}

int run_perplexity(const std::string& model_path, const std::string& input, bool oov_as_unk) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + model_path);
  const auto model = scalecheck::NgramModel::load(in);
  auto words = scalecheck::tokenize_words(scalecheck::read_text_file(input));
  std::uint64_t mapped = 0;
  if (oov_as_unk && model.vocab().find("<unk>")) {
    const auto counts = scalecheck::type_counts(words);
    for (scalecheck::SymbolId k = 0; k < words.vocab_size(); ++k) {
      if (!model.vocab().find(words.vocab().surface(k))) mapped += counts[k];
    }
    auto vocab = std::make_shared<scalecheck::Vocabulary>();
    std::vector<scalecheck::SymbolId> ids;
    ids.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto& s = words.surface(i);
      ids.push_back(vocab->intern(model.vocab().find(s) ? std::string_view(s) : std::string_view("<unk>")));
    }
    words = scalecheck::TokenSequence(std::move(ids), std::move(vocab), scalecheck::Level::kWord);
  }
  const double ppl = scalecheck::ngram_perplexity(model, words);
  json out;
  out["model"] = model_path;
  out["input"] = input;
  out["order"] = model.order();
  out["discount"] = model.discount();
  out["tokens"] = words.size();
  out["oov_mapped"] = mapped;
  out["perplexity"] = std::stod(scalecheck::format_number(ppl));
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_pcfg_induce(const std::string& treebank, const std::string& out, bool keep_tags, bool keep_empty) {
  scalecheck::InduceOptions options;
  options.strip_function_tags = !keep_tags;
  options.drop_empty_elements = !keep_empty;
  const auto grammar = scalecheck::pcfg_induce(scalecheck::read_text_file(treebank), options);
  std::ostringstream buffer;
  grammar.save(buffer);
  write_file(out, buffer.str());
  spdlog::info("induced {} productions, start symbol {}", grammar.productions().size(), grammar.start());
  return kExitOk;
}

int run_report(const std::vector<std::string>& inputs, const std::string& format, const std::string& out) {
  std::vector<scalecheck::SummaryRow> rows;
  for (const auto& path : inputs) {
    json j;
    try {
      j = json::parse(scalecheck::read_text_file(path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kFormatError, path + ": " + e.what());
    }
    rows.push_back(scalecheck::summary_from_json(j));
  }
  write_file(out, scalecheck::summary_table(rows, table_format(format)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Scaling-law checks for natural and generated text"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scalecheck 1.0");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Measure the five scaling properties of a text");
  cmd_analyze->add_option("--input", analyze.input, "Whitespace-tokenized word text")->required()->check(CLI::ExistingFile);
  cmd_analyze->add_option("--char-input", analyze.char_input, "UTF-8 text for the character-level analysis")
      ->check(CLI::ExistingFile);
  cmd_analyze->add_option("--taylor-l", analyze.taylor_l, "Taylor segment size")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--lrc-q", analyze.lrc_q, "Rare-word fraction denominator")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--unk-min-freq", analyze.unk_min_freq, "Map types rarer than K to <unk>");
  cmd_analyze->add_flag("--replace-numbers", analyze.replace_numbers, "Map numeric tokens to N");
  cmd_analyze->add_option("--out", analyze.out, "Output directory")->capture_default_str();
  cmd_analyze->add_option("--format", analyze.format, "Summary format")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
  cmd_analyze->add_option("--name", analyze.name, "Row name (default: input file stem)");
  cmd_analyze->add_option("--perplexity", analyze.perplexity, "Perplexity to record in the row")->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--log-base", analyze.log_base, "Logarithm base of the fits")->capture_default_str();

  GenerateArgs generate;
  auto* cmd_generate = app.add_subcommand("generate", "Sample text from a generative model");
  cmd_generate->add_option("--model", generate.model, "simon, py, ngram or pcfg")
      ->required()->check(CLI::IsMember({"simon", "py", "ngram", "pcfg"}));
  cmd_generate->add_option("--a", generate.a, "Simon a or Pitman-Yor discount");
  cmd_generate->add_option("--b", generate.b, "Pitman-Yor strength");
  cmd_generate->add_option("--model-file", generate.model_file, "n-gram model")->check(CLI::ExistingFile);
  cmd_generate->add_option("--grammar", generate.grammar, "PCFG grammar")->check(CLI::ExistingFile);
  cmd_generate->add_option("--length", generate.length, "Number of tokens")->capture_default_str();
  cmd_generate->add_option("--seed", generate.seed, "RNG seed")->capture_default_str();
  cmd_generate->add_option("--max-depth", generate.max_depth, "PCFG derivation depth limit")->capture_default_str();
  cmd_generate->add_option("--out", generate.out, "Output text file")->required();

  std::string train_input, train_out;
  int train_order = 0;
  double train_discount = 0.75;
  std::uint64_t train_unk = 0;
  auto* cmd_train = app.add_subcommand("train-ngram", "Train a back-off n-gram model");
  cmd_train->add_option("--input", train_input, "Training text")->required()->check(CLI::ExistingFile);
  cmd_train->add_option("--order", train_order, "Model order")->required()->check(CLI::Range(1, 32));
  cmd_train->add_option("--discount", train_discount, "Absolute discount")->capture_default_str();
  cmd_train->add_option("--unk-min-freq", train_unk, "Map types rarer than K to <unk>");
  cmd_train->add_option("--out", train_out, "Model file")->required();

  std::string ppl_model, ppl_input;
  bool ppl_unk = false;
  auto* cmd_ppl = app.add_subcommand("perplexity", "Score a text with an n-gram model");
  cmd_ppl->add_option("--model", ppl_model, "Model file")->required()->check(CLI::ExistingFile);
  cmd_ppl->add_option("--input", ppl_input, "Text to score")->required()->check(CLI::ExistingFile);
  cmd_ppl->add_flag("--oov-as-unk", ppl_unk, "Score unknown tokens as <unk> when the model has it");

  std::string induce_treebank, induce_out;
  bool keep_tags = false, keep_empty = false;
  auto* cmd_induce = app.add_subcommand("pcfg-induce", "Induce a PCFG from a bracketed treebank");
  cmd_induce->add_option("--treebank", induce_treebank, "Bracketed trees")->required()->check(CLI::ExistingFile);
  cmd_induce->add_option("--out", induce_out, "Grammar file")->required();
  cmd_induce->add_flag("--keep-function-tags", keep_tags, "Keep labels such as NP-SBJ");
  cmd_induce->add_flag("--keep-empty-elements", keep_empty, "Keep -NONE- subtrees");

  std::vector<std::string> report_inputs;
  std::string report_format = "tsv", report_out;
  auto* cmd_report = app.add_subcommand("report", "Combine analyze reports into one table");
  cmd_report->add_option("--inputs", report_inputs, "report.json files")->required()->expected(1, -1)->check(CLI::ExistingFile);
  cmd_report->add_option("--format", report_format, "Table format")->required()->check(CLI::IsMember({"tsv", "json"}));
  cmd_report->add_option("--out", report_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_analyze->parsed()) return run_analyze(analyze);
    if (cmd_generate->parsed()) return run_generate(generate);
    if (cmd_train->parsed()) return run_train_ngram(train_input, train_order, train_discount, train_unk, train_out);
    if (cmd_ppl->parsed()) return run_perplexity(ppl_model, ppl_input, ppl_unk);
    if (cmd_induce->parsed()) return run_pcfg_induce(induce_treebank, induce_out, keep_tags, keep_empty);
    if (cmd_report->parsed()) return run_report(report_inputs, report_format, report_out);
  } catch (const Error& e) {
    spdlog::error("{}: {}", scalecheck::error_code_name(e.code()), e.what());
    return e.code() == ErrorCode::kInvalidParam ? kExitUsage : kExitData;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("IoError: {}", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }
  return kExitUsage;
}
