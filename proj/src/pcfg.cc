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

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <set>

#include "scalecheck/error.h"
#include "text_format.h"

namespace scalecheck {

namespace {

constexpr std::string_view kMagic = "scalecheck-pcfg";
constexpr int kMaxConsecutiveAbandons = 1000;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

[[noreturn]] void parse_error(std::size_t offset, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "treebank: " + what + " at offset " + std::to_string(offset));
}

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : text_(text) {}

  std::vector<Tree> read_all() {
    std::vector<Tree> trees;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) return trees;
      if (text_[pos_] != '(') parse_error(pos_, "expected '('");
      trees.push_back(read_tree());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view read_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  // Iterative so deeply nested input cannot exhaust the call stack.
  Tree read_tree() {
    std::vector<std::pair<Tree, std::size_t>> stack;  // node, open offset
    while (true) {
      skip_space();
      if (pos_ == text_.size()) {
        parse_error(pos_, "unexpected end of input, unclosed '(' from offset " +
                              std::to_string(stack.empty() ? pos_ : stack.back().second));
      }
      const char c = text_[pos_];
      if (c == '(') {
        const std::size_t open = pos_++;
        skip_space();
        Tree node;
        if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
          node.label = std::string(read_atom());
        }
        stack.emplace_back(std::move(node), open);
      } else if (c == ')') {
        if (stack.empty()) parse_error(pos_, "unbalanced ')'");
        auto [node, open] = std::move(stack.back());
        stack.pop_back();
        if (node.children.empty()) parse_error(open, "node without children");
        ++pos_;
        if (stack.empty()) return node;
        stack.back().first.children.push_back(std::move(node));
      } else {
        if (stack.empty()) parse_error(pos_, "terminal outside brackets");
        stack.back().first.children.push_back(Tree{std::string(read_atom()), {}});
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string strip_tags(const std::string& label) {
  if (label.empty() || label[0] == '-') return label;
  const auto cut = label.find_first_of("-=");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

bool is_empty_element(const Tree& t) { return !t.is_terminal() && t.label == "-NONE-"; }

// Removes -NONE- subtrees; returns false if nothing remains of `tree`.
bool prune_empty(Tree& tree) {
  if (tree.is_terminal()) return true;
  if (is_empty_element(tree)) return false;
  std::vector<std::pair<Tree*, bool>> stack{{&tree, false}};
  while (!stack.empty()) {
    auto& [node, expanded] = stack.back();
    if (!expanded) {
      expanded = true;
      Tree* current = node;
      for (auto& child : current->children) {
        if (!child.is_terminal() && !is_empty_element(child)) stack.emplace_back(&child, false);
      }
      continue;
    }
    // Children are final here; a fully pruned node is left as an unlabeled leaf.
    std::erase_if(node->children, [](const Tree& c) {
      return is_empty_element(c) || (c.is_terminal() && c.label.empty());
    });
    if (node->children.empty()) node->label.clear();
    stack.pop_back();
  }
  return !tree.children.empty();
}

void relabel(Tree& tree) {
  std::vector<Tree*> stack{&tree};
  while (!stack.empty()) {
    Tree* node = stack.back();
    stack.pop_back();
    if (node->is_terminal()) continue;
    node->label = strip_tags(node->label);
    for (auto& child : node->children) stack.push_back(&child);
  }
}

using RuleKey = std::pair<std::string, std::vector<GrammarSymbol>>;

void count_rules(const Tree& tree, std::map<RuleKey, std::uint64_t>& counts) {
  std::vector<const Tree*> stack{&tree};
  while (!stack.empty()) {
    const Tree* node = stack.back();
    stack.pop_back();
    std::vector<GrammarSymbol> rhs;
    rhs.reserve(node->children.size());
    for (const auto& child : node->children) {
      rhs.push_back({child.label, child.is_terminal()});
      if (!child.is_terminal()) stack.push_back(&child);
    }
    ++counts[{node->label, std::move(rhs)}];
  }
}

std::string encode_symbol(const GrammarSymbol& s) {
  return (s.terminal ? "T:" : "N:") + text_format::escape(s.name);
}

GrammarSymbol decode_symbol(std::string_view field) {
  if (field.size() < 2 || field[1] != ':' || (field[0] != 'T' && field[0] != 'N')) {
    throw Error(ErrorCode::kFormatError, "pcfg: bad symbol '" + std::string(field) + "'");
  }
  return {text_format::unescape(field.substr(2)), field[0] == 'T'};
}

}  // namespace

TreeList::~TreeList() {
  std::vector<Tree> pending;
  for (auto& child : *this) {
    if (!child.children.empty()) pending.push_back(std::move(child));
  }
  while (!pending.empty()) {
    Tree node = std::move(pending.back());
    pending.pop_back();
    for (auto& child : node.children) {
      if (!child.children.empty()) pending.push_back(std::move(child));
    }
  }
}

std::vector<Tree> read_treebank(std::string_view text) { return TreeReader(text).read_all(); }

Pcfg::Pcfg(std::string start, std::vector<Production> productions)
    : start_(std::move(start)), productions_(std::move(productions)) {
  for (const auto& p : productions_) {
    if (p.lhs.empty()) throw Error(ErrorCode::kInvalidParam, "pcfg: empty left-hand side");
    if (nonterminal_index_.try_emplace(p.lhs, nonterminal_index_.size()).second) {
      rules_.emplace_back();
    }
  }
  if (!nonterminal_index_.contains(start_)) {
    throw Error(ErrorCode::kInvalidParam, "pcfg: start symbol '" + start_ + "' has no productions");
  }
  std::unordered_map<std::string, std::size_t> terminal_index;
  compiled_rhs_.reserve(productions_.size());
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    const auto& p = productions_[i];
    if (p.rhs.empty()) throw Error(ErrorCode::kInvalidParam, "pcfg: empty right-hand side");
    if (!(p.probability >= 0.0 && p.probability <= 1.0)) {
      throw Error(ErrorCode::kInvalidParam, "pcfg: probability outside [0, 1]");
    }
    std::vector<std::int64_t> rhs;
    for (const auto& s : p.rhs) {
      if (s.terminal) {
        auto [it, inserted] = terminal_index.try_emplace(s.name, terminals_.size());
        if (inserted) terminals_.push_back(s.name);
        rhs.push_back(-static_cast<std::int64_t>(it->second) - 1);
      } else {
        const auto it = nonterminal_index_.find(s.name);
        if (it == nonterminal_index_.end()) {
          throw Error(ErrorCode::kInvalidParam, "pcfg: nonterminal '" + s.name + "' has no productions");
        }
        rhs.push_back(static_cast<std::int64_t>(it->second));
      }
    }
    compiled_rhs_.push_back(std::move(rhs));
    rules_[nonterminal_index_.at(p.lhs)].push_back(i);
  }
  cumulative_.resize(rules_.size());
  for (const auto& [name, nt] : nonterminal_index_) {
    double sum = 0.0;
    for (std::size_t i : rules_[nt]) {
      sum += productions_[i].probability;
      cumulative_[nt].push_back(sum);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidParam,
                  "pcfg: probabilities of '" + name + "' sum to " + std::to_string(sum));
    }
  }
}

bool Pcfg::is_nonterminal(std::string_view name) const {
  return nonterminal_index_.contains(std::string(name));
}

std::optional<std::vector<std::size_t>> Pcfg::derive(SeededRng& rng,
                                                     std::size_t max_depth) const {
  std::vector<std::size_t> out;
  std::vector<std::pair<std::int64_t, std::size_t>> stack;  // symbol, depth
  stack.emplace_back(static_cast<std::int64_t>(nonterminal_index_.at(start_)), 1);
  while (!stack.empty()) {
    const auto [symbol, depth] = stack.back();
    stack.pop_back();
    if (symbol < 0) {
      out.push_back(static_cast<std::size_t>(-symbol - 1));
      continue;
    }
    if (depth > max_depth) return std::nullopt;
    const auto nt = static_cast<std::size_t>(symbol);
    const auto& cum = cumulative_[nt];
    const double u = rng.uniform() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    const auto& rhs = compiled_rhs_[rules_[nt][static_cast<std::size_t>(it - cum.begin())]];
    for (auto r = rhs.rbegin(); r != rhs.rend(); ++r) stack.emplace_back(*r, depth + 1);
  }
  return out;
}

void Pcfg::save(std::ostream& out) const {
  out << kMagic << '\t' << kFormatVersion << '\n';
  out << "start\t" << text_format::escape(start_) << '\n';
  out << "productions\t" << productions_.size() << '\n';
  for (const auto& p : productions_) {
    out << text_format::escape(p.lhs) << '\t' << text_format::format_double(p.probability) << '\t'
        << p.count << '\t';
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      if (i > 0) out << ' ';
      out << encode_symbol(p.rhs[i]);
    }
    out << '\n';
  }
  out << "end\n";
}

Pcfg Pcfg::load(std::istream& in) {
  using text_format::next_line;
  using text_format::split;
  const auto header = split(next_line(in, "header"), '\t');
  if (header.size() != 2 || header[0] != kMagic) {
    throw Error(ErrorCode::kFormatError, "pcfg: not a scalecheck grammar");
  }
  if (text_format::parse_uint(header[1]) != static_cast<std::uint64_t>(kFormatVersion)) {
    throw Error(ErrorCode::kFormatError, "pcfg: unsupported format version");
  }
  const auto start = split(next_line(in, "start"), '\t');
  if (start.size() != 2 || start[0] != "start") throw Error(ErrorCode::kFormatError, "pcfg: expected start line");
  const auto count = split(next_line(in, "productions"), '\t');
  if (count.size() != 2 || count[0] != "productions") {
    throw Error(ErrorCode::kFormatError, "pcfg: expected productions line");
  }
  const auto n = text_format::parse_uint(count[1]);
  std::vector<Production> productions;
  productions.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto fields = split(next_line(in, "production"), '\t');
    if (fields.size() != 4) throw Error(ErrorCode::kFormatError, "pcfg: bad production line");
    Production p;
    p.lhs = text_format::unescape(fields[0]);
    p.probability = text_format::parse_double(fields[1]);
    p.count = text_format::parse_uint(fields[2]);
    for (auto f : split(fields[3], ' ')) p.rhs.push_back(decode_symbol(f));
    productions.push_back(std::move(p));
  }
  if (next_line(in, "trailer") != "end") throw Error(ErrorCode::kFormatError, "pcfg: missing end");
  try {
    return Pcfg(text_format::unescape(start[1]), std::move(productions));
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, e.what());
  }
}

Pcfg pcfg_induce(std::string_view treebank_text, const InduceOptions& options) {
  auto trees = read_treebank(treebank_text);
  std::vector<Tree> kept;
  for (auto& tree : trees) {
    if (options.drop_empty_elements && !prune_empty(tree)) continue;
    if (options.strip_function_tags) relabel(tree);
    if (tree.label.empty()) tree.label = options.synthetic_start;
    kept.push_back(std::move(tree));
  }
  if (kept.empty()) throw Error(ErrorCode::kEmptyTreebank, "treebank: no trees");

  std::set<std::string> roots;
  for (const auto& t : kept) roots.insert(t.label);
  std::string start = *roots.begin();
  std::map<RuleKey, std::uint64_t> counts;
  if (roots.size() > 1) {
    start = options.synthetic_start;
    for (const auto& t : kept) {
      if (t.label != start) ++counts[{start, {GrammarSymbol{t.label, false}}}];
    }
  }
  for (const auto& t : kept) count_rules(t, counts);

  std::map<std::string, std::uint64_t> lhs_totals;
  for (const auto& [key, c] : counts) lhs_totals[key.first] += c;
  std::vector<Production> productions;
  productions.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    productions.push_back({key.first, key.second,
                           static_cast<double>(c) / static_cast<double>(lhs_totals[key.first]), c});
  }
  return Pcfg(std::move(start), std::move(productions));
}

std::optional<std::vector<std::string>> pcfg_sample_sentence(const Pcfg& grammar,
                                                             SeededRng& rng,
                                                             std::size_t max_depth) {
  auto ids = grammar.derive(rng, max_depth);
  if (!ids) return std::nullopt;
  std::vector<std::string> words;
  words.reserve(ids->size());
  for (std::size_t id : *ids) words.push_back(grammar.terminal(id));
  return words;
}

PcfgSample pcfg_generate(const Pcfg& grammar, std::size_t target_length, SeededRng& rng,
                         std::size_t max_depth) {
  PcfgSample sample;
  std::vector<SymbolId> remap(grammar.terminal_count(), static_cast<SymbolId>(-1));
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<SymbolId> ids;
  ids.reserve(target_length);
  int consecutive = 0;
  while (ids.size() < target_length) {
    auto sentence = grammar.derive(rng, max_depth);
    if (!sentence) {
      ++sample.abandoned;
      if (++consecutive >= kMaxConsecutiveAbandons) {
        throw Error(ErrorCode::kUnproductiveGrammar,
                    "pcfg: " + std::to_string(kMaxConsecutiveAbandons) +
                        " consecutive derivations exceeded depth " + std::to_string(max_depth));
      }
      continue;
    }
    consecutive = 0;
    ++sample.sentences;
    for (std::size_t t : *sentence) {
      if (remap[t] == static_cast<SymbolId>(-1)) remap[t] = vocab->intern(grammar.terminal(t));
      ids.push_back(remap[t]);
    }
  }
  sample.tokens = TokenSequence(std::move(ids), std::move(vocab), Level::kWord);
  return sample;
}

}  // namespace scalecheck
