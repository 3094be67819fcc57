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

// End-to-end acceptance checks. Prints one PASS / FAIL / SKIP line per
// criterion and exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scalecheck/corpus.h"
#include "scalecheck/error.h"
#include "scalecheck/ngram.h"
#include "scalecheck/pcfg.h"
#include "scalecheck/powerlaw_fit.h"
#include "scalecheck/report.h"
#include "scalecheck/scaling.h"
#include "scalecheck/simon_py.h"
#include "test_util.h"

#ifndef SCALECHECK_CLI_PATH
#error "SCALECHECK_CLI_PATH must name the scalecheck executable"
#endif

namespace {

namespace fs = std::filesystem;
using namespace scalecheck;
using testing::spell;

// ---- tolerances

constexpr double kFitTol = 1e-9;       // exact laws: exponent and epsilon
constexpr double kOlsTol = 1e-12;      // noisy sets vs closed-form OLS
constexpr double kFitSeconds = 1.0;
constexpr double kEtaIid = 0.05;       // |eta - 1|
constexpr double kZetaIidLo = 0.47, kZetaIidHi = 0.53;
constexpr double kIidSeconds = 60.0;
constexpr double kTaylorOneTol = 1e-6;
constexpr double kBruteTol = 1e-9;
constexpr double kSimonBetaLo = 0.90, kSimonBetaHi = 1.00;
constexpr double kZetaHalfTol = 0.02;  // |zeta - 0.5|
constexpr double kSimonXiLo = 0.03, kSimonXiHi = 0.20;
constexpr double kSimonSeconds = 120.0;
constexpr double kPyBeta = 0.78, kPyBetaTol = 0.05;
constexpr double kShortEtaTol = 0.05;
constexpr double kWt2Beta = 0.75, kWt2BetaTol = 0.03;
constexpr double kWt2Eta = 1.32, kWt2EtaTol = 0.08;
constexpr double kWt2Zeta = 0.62, kWt2ZetaTol = 0.03;
constexpr double kWt2Xi = 0.33, kWt2XiTol = 0.08;
constexpr double kWt2Perplexity = 181.75, kWt2PerplexityBand = 0.25;

constexpr std::size_t kMillion = 1'000'000;

struct Outcome {
  enum Kind { kPass, kFail, kSkip } kind = kFail;
  std::string detail;
};

std::string num(double v) { return format_number(v); }

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    notes_.push_back(what);
  }
  Outcome outcome(double seconds) const {
    std::string detail;
    for (std::size_t i = 0; i < notes_.size(); ++i) detail += (i ? "; " : "") + notes_[i];
    detail += "; " + num(seconds) + " s";
    if (!failures_.empty()) {
      detail += "; failed:";
      for (const auto& f : failures_) detail += " [" + f + "]";
    }
    return {failures_.empty() ? Outcome::kPass : Outcome::kFail, detail};
  }

 private:
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

bool within(double v, double center, double tol) { return std::abs(v - center) <= tol; }
bool between(double v, double lo, double hi) { return v >= lo && v <= hi; }

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("scalecheck_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int cli(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = std::string(SCALECHECK_CLI_PATH) + " " + args + " >" + stdout_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) { return read_text_file(p); }

void spit(const std::string& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Random English-like treebank: phrase structure from a fixed rule list,
// Zipfian lexical choice per category.
std::string synthetic_treebank(std::size_t trees, std::uint64_t seed) {
  struct Rule {
    double weight;
    std::vector<std::string> rhs;
  };
  const std::map<std::string, std::vector<Rule>> rules = {
      {"S", {{0.8, {"NP", "VP"}}, {0.1, {"S", "CC", "S"}}, {0.1, {"VP"}}}},
      {"NP", {{0.4, {"DT", "NN"}}, {0.2, {"DT", "JJ", "NN"}}, {0.2, {"NN"}}, {0.15, {"NP", "PP"}}, {0.05, {"PRP"}}}},
      {"VP", {{0.45, {"VB", "NP"}}, {0.25, {"VB"}}, {0.2, {"VB", "NP", "PP"}}, {0.1, {"VB", "SBAR"}}}},
      {"SBAR", {{1.0, {"IN", "S"}}}},
      {"PP", {{1.0, {"IN", "NP"}}}},
  };
  const std::map<std::string, std::pair<std::size_t, std::size_t>> lexicon = {
      // category -> (first spelled index, size)
      {"DT", {0, 6}}, {"NN", {100, 6000}}, {"JJ", {7000, 1500}}, {"VB", {9000, 2000}},
      {"IN", {12000, 25}}, {"PRP", {12100, 8}}, {"CC", {12200, 3}}};
  std::map<std::string, std::vector<double>> lex_cdf;
  for (const auto& [cat, range] : lexicon) {
    double sum = 0;
    for (std::size_t k = 0; k < range.second; ++k) lex_cdf[cat].push_back(sum += 1.0 / static_cast<double>(k + 1));
  }
  std::mt19937_64 engine(seed);
  auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  std::function<void(const std::string&, int, std::string&)> build = [&](const std::string& label, int depth,
                                                                          std::string& out) {
    out += "(" + label;
    if (auto lex = lexicon.find(label); lex != lexicon.end()) {
      const auto& cdf = lex_cdf[label];
      const double u = uniform() * cdf.back();
      const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      out += " " + spell(lex->second.first + std::min(k, lex->second.second - 1)) + ")";
      return;
    }
    const auto& options = rules.at(label);
    std::size_t pick = 0;
    if (depth < 12) {
      double u = uniform();
      while (pick + 1 < options.size() && u >= options[pick].weight) u -= options[pick++].weight;
    } else {
      // Past the depth cap take the least recursive alternative.
      static const std::map<std::string, std::size_t> kShallow = {{"NP", 2}, {"VP", 1}};
      const auto it = kShallow.find(label);
      pick = it == kShallow.end() ? 0 : it->second;
    }
    for (const auto& child : options[pick].rhs) {
      out += " ";
      build(child, depth + 1, out);
    }
    out += ")";
  };
  std::string text;
  for (std::size_t i = 0; i < trees; ++i) {
    text += "( ";
    build("S", 0, text);
    text += " )\n";
  }
  return text;
}

// Word stream respelled so identities are letter strings, for a
// character stream with a natural-looking alphabet.
TokenSequence respelled(const TokenSequence& seq) {
  auto vocab = std::make_shared<Vocabulary>();
  for (SymbolId k = 0; k < seq.vocab_size(); ++k) vocab->intern(spell(k));
  return TokenSequence(std::vector<SymbolId>(seq.ids().begin(), seq.ids().end()), std::move(vocab), Level::kWord);
}

// ---- criteria

Outcome criterion1() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 engine(20260101);
  std::uniform_real_distribution<double> kd(-3.0, 3.0), cd(1e-3, 1e3), zd(1.0, 1e6);
  double worst_k = 0, worst_e = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double kappa = kd(engine), coef = cd(engine);
    LogLogPoints pts;
    for (int i = 0; i < 40; ++i) {
      const double z = zd(engine);
      pts.push_back({z, coef * std::pow(z, kappa)});
    }
    const auto fit = fit_power_law(pts);
    worst_k = std::max(worst_k, std::abs(fit.exponent - kappa));
    worst_e = std::max(worst_e, fit.epsilon);
  }
  c.expect(worst_k <= kFitTol, "exact laws max |dk| " + num(worst_k));
  c.expect(worst_e <= kFitTol, "exact laws max eps " + num(worst_e));
  double worst_ols = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto pts = testing::noisy_points(seed, 0.3 + 0.01 * static_cast<double>(seed));
    const auto fit = fit_power_law(pts);
    const auto ref = testing::ols_from_sums(pts);
    worst_ols = std::max({worst_ols, std::abs(fit.exponent - ref.slope), std::abs(fit.intercept - ref.intercept),
                          std::abs(fit.epsilon - ref.rms)});
  }
  c.expect(worst_ols <= kOlsTol, "noisy vs OLS max diff " + num(worst_ols));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < kFitSeconds, "runtime < " + num(kFitSeconds) + " s");
  return c.outcome(secs);
}

Outcome criterion2() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  const auto chars = testing::make_sequence(testing::uniform_draws(kMillion, 27, 2), Level::kCharacter);
  const double eta = ebeling_analysis(chars).fit.exponent;
  c.expect(within(eta, 1.0, kEtaIid), "iid chars eta " + num(eta));
  const auto words = testing::make_sequence(testing::zipf_draws(kMillion, 50'000, 1.0, 3));
  const double zeta = taylor_analysis(words, 5620).fit.exponent;
  c.expect(between(zeta, kZetaIidLo, kZetaIidHi), "iid zipf zeta " + num(zeta));
  const auto lrc = lrc_analysis(words, 16);
  c.expect(lrc.classification == Correlation::kNo, std::string("iid zipf lrc ") + std::string(correlation_name(lrc.classification)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < kIidSeconds, "runtime < " + num(kIidSeconds) + " s");
  return c.outcome(secs);
}

Outcome criterion3() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  // Five types occur m_j * t_i times in segment i; a filler pads each
  // segment to length l and is left out of the fit.
  const std::vector<std::size_t> m{1, 2, 3, 5, 8};
  const std::vector<std::size_t> t{1, 4, 2, 6, 3, 5, 1, 2, 6, 4, 3, 5};
  const std::size_t l = 120;
  std::vector<std::size_t> types;
  for (std::size_t ti : t) {
    std::size_t used = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t k = 0; k < m[j] * ti; ++k) types.push_back(j + 1);
      used += m[j] * ti;
    }
    for (; used < l; ++used) types.push_back(0);
  }
  const auto seq = testing::make_sequence(types);
  const auto result = taylor_analysis(seq, l);
  LogLogPoints proportional;
  for (std::size_t i = 0; i < result.types.size(); ++i) {
    if (seq.vocab().surface(result.types[i]) != spell(0)) proportional.push_back(result.points[i]);
  }
  const auto fit = fit_power_law(proportional);
  c.expect(proportional.size() == 5, "points " + std::to_string(proportional.size()));
  c.expect(within(fit.exponent, 1.0, kTaylorOneTol), "zeta " + num(fit.exponent));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

Outcome criterion4() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  double worst_m = 0, worst_acf = 0;
  std::size_t cases = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = 1000 * seed + 2000;  // up to 10^4
    const auto seq = testing::make_sequence(testing::zipf_draws(n, 5 + 5 * seed, 1.0, seed), Level::kCharacter);
    for (std::size_t l : {1ul, 2ul, 3ul, 7ul, 10ul, 31ul, 100ul, n / 10}) {
      const double fast = ebeling_fluctuation(seq, l);
      const double slow = testing::ebeling_oracle(seq, l);
      worst_m = std::max(worst_m, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
      ++cases;
    }
    std::mt19937_64 engine(seed);
    std::geometric_distribution<int> gaps(0.05);
    std::vector<double> r(n);
    for (auto& x : r) x = 1.0 + gaps(engine);
    const auto fast = autocorrelation(r, 100);
    const auto slow = testing::acf_oracle(r, 100);
    for (std::size_t s = 0; s < slow.size(); ++s) worst_acf = std::max(worst_acf, std::abs(fast[s].value - slow[s]));
  }
  c.expect(worst_m <= kBruteTol, "ebeling m(l) max rel diff " + num(worst_m) + " over " + std::to_string(cases));
  c.expect(worst_acf <= kBruteTol, "acf max diff " + num(worst_acf));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

Outcome criterion5() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  SeededRng rng(1);
  const auto seq = simon_generate({0.1}, kMillion, rng);
  const auto heaps = heaps_analysis(seq);
  const auto taylor = taylor_analysis(seq, 5620);
  const auto lrc = lrc_analysis(seq, 16);
  c.expect(between(heaps.fit.exponent, kSimonBetaLo, kSimonBetaHi),
           "beta " + num(heaps.fit.exponent) + " (eps " + num(heaps.fit.epsilon) + ")");
  c.expect(within(taylor.fit.exponent, 0.5, kZetaHalfTol), "zeta " + num(taylor.fit.exponent));
  c.expect(lrc.classification == Correlation::kCorrelated,
           std::string("lrc ") + std::string(correlation_name(lrc.classification)));
  if (lrc.fit) c.expect(between(lrc.xi(), kSimonXiLo, kSimonXiHi), "xi " + num(lrc.xi()));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < kSimonSeconds, "runtime < " + num(kSimonSeconds) + " s");
  return c.outcome(secs);
}

Outcome criterion6() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  SeededRng rng(1);
  const auto seq = py_generate({0.8, 1.0}, kMillion, rng);
  const auto heaps = heaps_analysis(seq);
  const auto taylor = taylor_analysis(seq, 5620);
  const auto lrc = lrc_analysis(seq, 16);
  c.expect(within(heaps.fit.exponent, kPyBeta, kPyBetaTol), "beta " + num(heaps.fit.exponent));
  c.expect(within(taylor.fit.exponent, 0.5, kZetaHalfTol), "zeta " + num(taylor.fit.exponent));
  c.expect(lrc.classification == Correlation::kNo, std::string("lrc ") + std::string(correlation_name(lrc.classification)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

void short_memory_checks(Checks& c, const std::string& label, const TokenSequence& words) {
  const auto chars = tokenize_chars(words.render(" "));
  const double eta = ebeling_analysis(chars).fit.exponent;
  const double zeta = taylor_analysis(words, 5620).fit.exponent;
  const auto lrc = lrc_analysis(words, 16);
  c.expect(within(eta, 1.0, kShortEtaTol), label + " eta " + num(eta));
  c.expect(within(zeta, 0.5, kZetaHalfTol), label + " zeta " + num(zeta));
  c.expect(lrc.classification == Correlation::kNo,
           label + " lrc " + std::string(correlation_name(lrc.classification)));
}

// Stationary text with long memory: blocks of 2000 tokens share 50
// function words and otherwise draw from one of ten topic vocabularies.
TokenSequence topical_corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::size_t> types;
  while (types.size() < n) {
    const std::size_t topic = engine() % 10;
    for (auto w : testing::zipf_draws(2000, 2000, 1.0, engine())) types.push_back(w < 50 ? w : topic * 2000 + w);
  }
  types.resize(n);
  return testing::make_sequence(types);
}

Outcome criterion7() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = topical_corpus(1'200'000, 101);
  const auto corpus_lrc = lrc_analysis(corpus, 16);
  c.expect(corpus_lrc.classification == Correlation::kCorrelated, "training corpus lrc " +
           std::string(correlation_name(corpus_lrc.classification)));
  const auto model = ngram_train(corpus, 5, 0.75);
  SeededRng gen_rng(8);
  short_memory_checks(c, "5-gram", ngram_generate(model, kMillion, gen_rng));

  const auto grammar = pcfg_induce(synthetic_treebank(40'000, 9));
  SeededRng pcfg_rng(10);
  auto sample = pcfg_generate(grammar, kMillion, pcfg_rng);
  short_memory_checks(c, "pcfg", sample.tokens);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Non-stationary training text for comparison; not gated.
  SeededRng simon_rng(7);
  const auto simon_model = ngram_train(respelled(simon_generate({0.1}, 1'200'000, simon_rng)), 5, 0.75);
  const auto simon_lrc = lrc_analysis(ngram_generate(simon_model, kMillion, gen_rng), 16);
  std::cout << "INFO  7 5-gram trained on Simon text: lrc " << correlation_name(simon_lrc.classification) << "\n";
  return c.outcome(secs);
}

Outcome criterion8() {
  const char* train = std::getenv("SCALECHECK_WT2_TRAIN");
  if (train == nullptr || *train == '\0') {
    return {Outcome::kSkip, "set SCALECHECK_WT2_TRAIN (and optionally SCALECHECK_WT2_TEST) to a WikiText-2 file"};
  }
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  const std::string text = read_text_file(train);
  const auto words = tokenize_words(text);
  const auto chars = tokenize_chars(text);
  const auto report = analyze_all(words, &chars, {}, "wt2");
  auto exponent = [](const auto& cell) { return cell.result ? cell.result->fit.exponent : NAN; };
  c.expect(within(exponent(report.heaps), kWt2Beta, kWt2BetaTol), "beta " + num(exponent(report.heaps)));
  c.expect(within(exponent(report.ebeling), kWt2Eta, kWt2EtaTol), "eta " + num(exponent(report.ebeling)));
  c.expect(within(exponent(report.taylor), kWt2Zeta, kWt2ZetaTol), "zeta " + num(exponent(report.taylor)));
  const bool correlated = report.lrc.result && report.lrc.result->classification == Correlation::kCorrelated;
  c.expect(correlated, "lrc correlated");
  if (correlated) c.expect(within(report.lrc.result->xi(), kWt2Xi, kWt2XiTol), "xi " + num(report.lrc.result->xi()));
  if (const char* test = std::getenv("SCALECHECK_WT2_TEST"); test && *test) {
    // Informational only: smoothing-dependent.
    const auto model = ngram_train(words, 5, 0.75);
    const double ppl = ngram_perplexity(model, tokenize_words(read_text_file(test)));
    const bool in_band = std::abs(ppl - kWt2Perplexity) <= kWt2PerplexityBand * kWt2Perplexity;
    std::cout << "INFO  8 5-gram perplexity " << num(ppl) << (in_band ? " (inside" : " (outside")
              << " the +-25% band around " << num(kWt2Perplexity) << ")\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

Outcome criterion9() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  Scratch box;
  SeededRng rng(3);
  spit(box.path("train.txt"), respelled(simon_generate({0.1}, 60'000, rng)).render() + "\n");
  spit(box.path("tb.mrg"), synthetic_treebank(500, 4));
  c.expect(cli("train-ngram --input " + box.path("train.txt") + " --order 3 --out " + box.path("m.ngram")) == 0,
           "train-ngram");
  c.expect(cli("pcfg-induce --treebank " + box.path("tb.mrg") + " --out " + box.path("g.pcfg")) == 0, "pcfg-induce");
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"simon", "--model simon --a 0.1"},
      {"py", "--model py --a 0.8 --b 1.0"},
      {"ngram", "--model ngram --model-file " + box.path("m.ngram")},
      {"pcfg", "--model pcfg --grammar " + box.path("g.pcfg")},
  };
  std::size_t identical = 0;
  for (const auto& [name, flags] : runs) {
    // Same flags twice; the first run's outputs are moved aside.
    const std::string out = box.path(name + ".txt");
    const std::string generate = "generate " + flags + " --length 100000 --seed 42 --out " + out;
    const std::string analyze = "analyze --input " + out + " --char-input " + out + " --out " + box.path(name);
    for (const std::string copy : {"1", "2"}) {
      c.expect(cli(generate) == 0, "generate " + name);
      c.expect(cli(analyze, box.path(name + ".tsv")) == 0, "analyze " + name);
      const fs::path saved = box.dir / ("run" + copy);
      fs::create_directories(saved);
      fs::rename(out, saved / (name + ".txt"));
      fs::rename(out + ".meta.json", saved / (name + ".txt.meta.json"));
      fs::rename(box.path(name + ".tsv"), saved / (name + ".tsv"));
      fs::rename(box.path(name), saved / name);
    }
    std::vector<std::string> files = {name + ".txt", name + ".txt.meta.json", name + ".tsv"};
    for (const auto& entry : fs::directory_iterator(box.dir / "run1" / name)) {
      files.push_back(name + "/" + entry.path().filename().string());
    }
    for (const auto& f : files) {
      const bool same = slurp((box.dir / "run1" / f).string()) == slurp((box.dir / "run2" / f).string());
      if (!same) c.expect(false, f + " differs");
      identical += same;
    }
  }
  c.expect(identical >= 4 * 9, std::to_string(identical) + " output files byte-identical");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

Outcome criterion10() {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  Scratch box;
  // Stand-ins for externally generated model output: a topical mixture and
  // an n-gram sample, written as plain text files.
  std::vector<std::string> names = {"topical", "ngram"};
  {
    spit(box.path("topical.txt"), topical_corpus(300'000, 55).render() + "\n");
    SeededRng rng(102);
    const auto model = ngram_train(respelled(simon_generate({0.1}, 200'000, rng)), 3, 0.75);
    spit(box.path("ngram.txt"), ngram_generate(model, 300'000, rng).render() + "\n");
  }
  std::string inputs;
  for (const auto& name : names) {
    const std::string file = box.path(name + ".txt");
    c.expect(cli("analyze --input " + file + " --char-input " + file + " --name " + name + " --perplexity 99.5 --out " +
                 box.path(name)) == 0,
             "analyze " + name);
    const auto report = nlohmann::json::parse(slurp(box.path(name + "/report.json")));
    const auto text = read_text_file(file);
    const auto words = tokenize_words(text);
    const auto chars = tokenize_chars(text);
    const auto direct = summarize(analyze_all(words, &chars));
    bool match = report["perplexity"] == 99.5;
    auto same = [&](const char* key, const SummaryCell& cell) {
      const auto& j = report[key];
      if (cell.exponent) match = match && j["exponent"].get<double>() == std::stod(num(*cell.exponent));
      if (!cell.label.empty()) match = match && j["label"] == cell.label;
    };
    same("heaps", direct.heaps);
    same("ebeling", direct.ebeling);
    same("taylor", direct.taylor);
    same("lrc", direct.lrc);
    same("zipf", direct.zipf);
    c.expect(match, name + " report matches in-process analysis");
    inputs += " " + box.path(name + "/report.json");
  }
  c.expect(cli("report --format tsv --out " + box.path("table.tsv") + " --inputs" + inputs) == 0, "report");
  const auto table = slurp(box.path("table.tsv"));
  c.expect(table.find("\ntopical\t99.5\t") != std::string::npos && table.find("\nngram\t99.5\t") > table.find("\ntopical\t"),
           "rows in order");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.outcome(secs);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const Error& e) {
      o = {Outcome::kFail, std::string("error ") + std::string(error_code_name(e.code())) + ": " + e.what()};
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.kind == Outcome::kPass ? "PASS" : o.kind == Outcome::kSkip ? "SKIP" : "FAIL";
    std::cout << tag << "  " << id << "  " << o.detail << std::endl;
    failed += o.kind == Outcome::kFail;
  }
  return failed == 0 ? 0 : 1;
}
