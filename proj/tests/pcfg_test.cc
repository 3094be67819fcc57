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

#include "scalecheck/pcfg.h"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "scalecheck/error.h"
#include "test_util.h"

namespace scalecheck {
namespace {

GrammarSymbol nt(const std::string& s) { return {s, false}; }
GrammarSymbol t(const std::string& s) { return {s, true}; }

std::string rhs_key(const Production& p) {
  std::string key = p.lhs + " ->";
  for (const auto& s : p.rhs) key += (s.terminal ? " '" : " ") + s.name + (s.terminal ? "'" : "");
  return key;
}

std::map<std::string, const Production*> by_key(const Pcfg& g) {
  std::map<std::string, const Production*> out;
  for (const auto& p : g.productions()) out[rhs_key(p)] = &p;
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidParam;
}

TEST_CASE("reads bracketed trees") {
  const auto trees = read_treebank("(S (NP a) (VP b))\n( (X y) )");
  REQUIRE(trees.size() == 2);
  CHECK(trees[0].label == "S");
  REQUIRE(trees[0].children.size() == 2);
  CHECK(trees[0].children[0].label == "NP");
  CHECK(trees[0].children[0].children[0].label == "a");
  CHECK(trees[0].children[0].children[0].is_terminal());
  CHECK(trees[1].label.empty());
}

TEST_CASE("deep trees do not exhaust the stack") {
  std::string text;
  const int depth = 200'000;
  for (int i = 0; i < depth; ++i) text += "(X ";
  text += "a";
  for (int i = 0; i < depth; ++i) text += ")";
  const auto g = pcfg_induce(text);
  CHECK(g.productions().size() == 2);
}

TEST_CASE("malformed treebanks") {
  CHECK(code_of([] { read_treebank("(S (NP a"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { read_treebank("(S a))"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { read_treebank("a"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { read_treebank("(S)"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { pcfg_induce(""); }) == ErrorCode::kEmptyTreebank);
  CHECK(code_of([] { pcfg_induce("  \n "); }) == ErrorCode::kEmptyTreebank);
  try {
    read_treebank("(S (NP a");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("single tree induction") {
  const auto g = pcfg_induce("(S (NP a) (VP b))");
  CHECK(g.start() == "S");
  const auto rules = by_key(g);
  REQUIRE(rules.size() == 3);
  CHECK(rules.at("S -> NP VP")->probability == 1.0);
  CHECK(rules.at("NP -> 'a'")->probability == 1.0);
  CHECK(rules.at("VP -> 'b'")->probability == 1.0);
}

TEST_CASE("relative frequencies over two trees") {
  const auto g = pcfg_induce("(S (NP a) (VP b)) (S (NP c) (VP b) (NP a))");
  const auto rules = by_key(g);
  CHECK(rules.at("S -> NP VP")->probability == doctest::Approx(0.5));
  CHECK(rules.at("S -> NP VP NP")->probability == doctest::Approx(0.5));
  CHECK(rules.at("NP -> 'a'")->count == 2);
  CHECK(rules.at("NP -> 'a'")->probability == doctest::Approx(2.0 / 3.0));
  CHECK(rules.at("NP -> 'c'")->probability == doctest::Approx(1.0 / 3.0));
  CHECK(rules.at("VP -> 'b'")->probability == 1.0);
}

TEST_CASE("induction recovers counts from randomly built trees") {
  // Trees are produced here from a fixed rule list while tallying each
  // expansion, then serialized and handed to the inducer.
  const std::map<std::string, std::vector<std::vector<std::string>>> rules = {
      {"S", {{"NP", "VP"}, {"VP"}, {"S", "CC", "S"}}},
      {"NP", {{"DT", "NN"}, {"NN"}, {"NP", "PP"}}},
      {"VP", {{"VB", "NP"}, {"VB"}, {"VB", "PP"}}},
      {"PP", {{"IN", "NP"}}},
  };
  const std::map<std::string, std::vector<std::string>> lexicon = {
      {"DT", {"the", "a"}}, {"NN", {"dog", "cat", "idea"}}, {"VB", {"saw", "ran"}},
      {"IN", {"of", "near"}}, {"CC", {"and"}}};
  std::mt19937_64 engine(31);
  std::map<std::string, std::uint64_t> tally;
  std::map<std::string, std::uint64_t> lhs_total;
  std::function<std::string(const std::string&, int)> build = [&](const std::string& label, int depth) {
    std::string key = label + " ->";
    std::string out = "(" + label;
    if (auto lex = lexicon.find(label); lex != lexicon.end()) {
      const auto& w = lex->second[engine() % lex->second.size()];
      key += " '" + w + "'";
      out += " " + w;
    } else {
      const auto& options = rules.at(label);
      const std::size_t pick = depth > 6 ? std::min<std::size_t>(1, options.size() - 1) : engine() % options.size();
      for (const auto& child : options[pick]) {
        key += " " + child;
        out += " " + build(child, depth + 1);
      }
    }
    ++tally[key];
    ++lhs_total[label];
    return out + ")";
  };
  std::string text;
  for (int i = 0; i < 300; ++i) text += build("S", 0) + "\n";
  const auto g = pcfg_induce(text);
  const auto got = by_key(g);
  CHECK(got.size() == tally.size());
  for (const auto& [key, count] : tally) {
    REQUIRE(got.count(key) == 1);
    const auto* p = got.at(key);
    CHECK(p->count == count);
    CHECK(p->probability == doctest::Approx(static_cast<double>(count) / lhs_total.at(p->lhs)).epsilon(1e-12));
  }
}

TEST_CASE("function tags and empty elements") {
  const auto g = pcfg_induce("(S (NP-SBJ-1 (DT the) (NN dog)) (VP=2 (VBD ran) (NP (-NONE- *T*-1))))");
  const auto rules = by_key(g);
  CHECK(rules.count("S -> NP VP") == 1);
  CHECK(rules.count("VP -> VBD") == 1);
  for (const auto& [key, p] : rules) {
    CHECK(key.find("NONE") == std::string::npos);
    CHECK(key.find("SBJ") == std::string::npos);
  }
  InduceOptions raw;
  raw.strip_function_tags = false;
  raw.drop_empty_elements = false;
  const auto kept = by_key(pcfg_induce("(S (NP-SBJ (-NONE- *)) (VP v))", raw));
  CHECK(kept.count("S -> NP-SBJ VP") == 1);
  CHECK(kept.count("-NONE- -> '*'") == 1);
}

TEST_CASE("root handling") {
  const auto wrapped = pcfg_induce("( (S (NP a)) ) ( (S (NP b)) )");
  CHECK(wrapped.start() == "ROOT");
  CHECK(by_key(wrapped).at("ROOT -> S")->probability == 1.0);
  const auto mixed = pcfg_induce("(S (NP a)) (FRAG (NP b)) (S (NP c))");
  CHECK(mixed.start() == "ROOT");
  const auto rules = by_key(mixed);
  CHECK(rules.at("ROOT -> S")->probability == doctest::Approx(2.0 / 3.0));
  CHECK(rules.at("ROOT -> FRAG")->probability == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("grammar validation") {
  CHECK(code_of([] { Pcfg("S", {{"S", {t("a")}, 0.5, 0}}); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { Pcfg("S", {{"S", {nt("X")}, 1.0, 0}}); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { Pcfg("S", {{"S", {}, 1.0, 0}}); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { Pcfg("T", {{"S", {t("a")}, 1.0, 0}}); }) == ErrorCode::kInvalidParam);
  CHECK_NOTHROW(Pcfg("S", {{"S", {t("a")}, 0.25, 0}, {"S", {t("b")}, 0.75, 0}}));
}

TEST_CASE("generation from a one-rule grammar") {
  const Pcfg g("S", {{"S", {t("a")}, 1.0, 0}});
  SeededRng rng(1);
  const auto sample = pcfg_generate(g, 3, rng);
  CHECK(sample.tokens.render() == "a a a");
  CHECK(sample.sentences == 3);
  CHECK(sample.abandoned == 0);
}

TEST_CASE("sentence length moments of a subcritical grammar") {
  // L = 1 with probability p, else L1 + L2: E[L] = p / (1 - 2q) and
  // E[L^2] = (p + 2 q E[L]^2) / (1 - 2q) with q = 1 - p.
  const double p = 0.7, q = 0.3;
  const double mean = p / (1 - 2 * q);
  const double second = (p + 2 * q * mean * mean) / (1 - 2 * q);
  const double var = second - mean * mean;
  CHECK(mean == doctest::Approx(1.75));
  CHECK(var == doctest::Approx(3.28125));
  const Pcfg g("S", {{"S", {t("a")}, p, 0}, {"S", {nt("S"), nt("S")}, q, 0}});
  SeededRng rng(2024);
  const int n = 100'000;
  double sum = 0.0;
  int done = 0;
  for (int i = 0; i < n; ++i) {
    const auto s = pcfg_sample_sentence(g, rng, 200);
    if (!s) continue;
    sum += static_cast<double>(s->size());
    ++done;
  }
  CHECK(done == n);
  CHECK(std::abs(sum / done - mean) <= 3 * std::sqrt(var / done));
}

TEST_CASE("depth limit on a supercritical grammar") {
  const Pcfg g("S", {{"S", {nt("S"), nt("S")}, 0.9, 0}, {"S", {t("a")}, 0.1, 0}});
  SeededRng rng(5);
  const auto sample = pcfg_generate(g, 1000, rng, 50);
  CHECK(sample.tokens.size() >= 1000);
  CHECK(sample.abandoned > 0);
  const Pcfg never("S", {{"S", {nt("S"), nt("S")}, 1.0, 0}});
  CHECK(code_of([&] { pcfg_generate(never, 10, rng, 50); }) == ErrorCode::kUnproductiveGrammar);
}

TEST_CASE("grammar save and load round trip") {
  const auto g = pcfg_induce("(S (NP the\\ dog) (VP (V ran) (ADV fast))) (S (NP it) (VP (V ran)))");
  std::ostringstream first;
  g.save(first);
  std::istringstream in(first.str());
  const auto loaded = Pcfg::load(in);
  std::ostringstream second;
  loaded.save(second);
  CHECK(first.str() == second.str());
  CHECK(loaded.start() == g.start());
  CHECK(loaded.productions().size() == g.productions().size());
  SeededRng a(3), b(3);
  CHECK(pcfg_generate(g, 200, a).tokens.render() == pcfg_generate(loaded, 200, b).tokens.render());
  std::istringstream bad("scalecheck-pcfg\t1\nstart\tS\nproductions\t1\nS\t0.5\t1\tT:a\nend\n");
  CHECK(code_of([&] { Pcfg::load(bad); }) == ErrorCode::kFormatError);
}

TEST_CASE("generated tokens are grammar terminals") {
  const auto g = pcfg_induce("(S (NP (DT the) (NN cat)) (VP (VB sat))) (S (NP (NN it)) (VP (VB ran) (NP (NN home))))");
  SeededRng rng(9);
  const auto sample = pcfg_generate(g, 5000, rng);
  for (SymbolId k = 0; k < sample.tokens.vocab_size(); ++k) {
    const auto& w = sample.tokens.vocab().surface(k);
    CHECK((w == "the" || w == "cat" || w == "sat" || w == "it" || w == "ran" || w == "home"));
  }
}

}  // namespace
}  // namespace scalecheck
