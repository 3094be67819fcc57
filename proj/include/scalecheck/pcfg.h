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

#ifndef SCALECHECK_PCFG_H_
#define SCALECHECK_PCFG_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scalecheck/corpus.h"
#include "scalecheck/rng.h"

namespace scalecheck {

struct Tree;

// Child list of a Tree; destroying it does not recurse, so arbitrarily deep
// trees can be released.
class TreeList : public std::vector<Tree> {
 public:
  using std::vector<Tree>::vector;
  TreeList() = default;
  TreeList(const TreeList&) = default;
  TreeList(TreeList&&) noexcept = default;
  TreeList& operator=(const TreeList&) = default;
  TreeList& operator=(TreeList&&) noexcept = default;
  ~TreeList();
};

// Bracketed parse tree; a node without children is a terminal.
struct Tree {
  std::string label;
  TreeList children;

  bool is_terminal() const { return children.empty(); }
};

// Reads label-first bracketed trees, e.g. "(S (NP a) (VP b))". Whitespace
// between tokens is insignificant. Throws Error(kParseError) with the byte
// offset of the problem.
std::vector<Tree> read_treebank(std::string_view text);

struct GrammarSymbol {
  std::string name;
  bool terminal = false;

  auto operator<=>(const GrammarSymbol&) const = default;
};

struct Production {
  std::string lhs;
  std::vector<GrammarSymbol> rhs;
  double probability = 0.0;
  std::uint64_t count = 0;  // treebank occurrences; 0 for hand-built rules
};

class Pcfg {
 public:
  static constexpr int kFormatVersion = 1;

  // Throws Error(kInvalidParam) unless every nonterminal's probabilities sum
  // to 1 within 1e-9, every right-hand nonterminal has productions, every
  // right-hand side is non-empty, and the start symbol has productions.
  Pcfg(std::string start, std::vector<Production> productions);

  // Throws Error(kFormatError).
  static Pcfg load(std::istream& in);
  void save(std::ostream& out) const;

  const std::string& start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }
  bool is_nonterminal(std::string_view name) const;

  // Terminal ids of one derivation, nullopt past max_depth.
  std::optional<std::vector<std::size_t>> derive(SeededRng& rng,
                                                 std::size_t max_depth) const;
  const std::string& terminal(std::size_t id) const { return terminals_[id]; }
  std::size_t terminal_count() const { return terminals_.size(); }

 private:
  std::string start_;
  std::vector<Production> productions_;
  std::unordered_map<std::string, std::size_t> nonterminal_index_;
  std::vector<std::string> terminals_;
  // Right-hand sides with nonterminals as n >= 0 and terminal t as -(t + 1).
  std::vector<std::vector<std::int64_t>> compiled_rhs_;
  // Per nonterminal: production indices and their cumulative probabilities.
  std::vector<std::vector<std::size_t>> rules_;
  std::vector<std::vector<double>> cumulative_;
};

struct InduceOptions {
  // "NP-SBJ-1" -> "NP", "NP=2" -> "NP"; labels starting with '-' are kept.
  bool strip_function_tags = true;
  // Drops -NONE- subtrees (traces, empty elements) and nodes left empty.
  bool drop_empty_elements = true;
  // Start symbol used when tree roots have no label or disagree.
  std::string synthetic_start = "ROOT";
};

// Relative-frequency grammar from every internal node of every tree.
// Throws Error(kParseError), Error(kEmptyTreebank).
Pcfg pcfg_induce(std::string_view treebank_text, const InduceOptions& options = {});

struct PcfgSample {
  TokenSequence tokens;
  std::uint64_t sentences = 0;
  std::uint64_t abandoned = 0;
};

// One top-down derivation from the start symbol; nullopt when a
// nonterminal would be expanded deeper than max_depth (the start symbol is
// at depth 1).
std::optional<std::vector<std::string>> pcfg_sample_sentence(const Pcfg& grammar,
                                                             SeededRng& rng,
                                                             std::size_t max_depth);

// Concatenates sampled sentences, without boundary markers, until at least
// target_length tokens exist. Abandoned derivations are resampled. Throws
// Error(kUnproductiveGrammar) after 1000 consecutive abandons.
PcfgSample pcfg_generate(const Pcfg& grammar, std::size_t target_length, SeededRng& rng,
                         std::size_t max_depth = 200);

}  // namespace scalecheck

#endif  // SCALECHECK_PCFG_H_
