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

#ifndef SCALECHECK_NGRAM_H_
#define SCALECHECK_NGRAM_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "scalecheck/corpus.h"
#include "scalecheck/rng.h"

namespace scalecheck {

// Interpolated absolute-discount back-off model over one unsegmented
// stream (no sentence boundary symbols):
//
//   P(w | ctx) = max(c(ctx, w) - D, 0) / c(ctx)
//              + D * N1+(ctx) / c(ctx) * P(w | ctx minus its oldest token)
//
// with c(ctx) the number of continuations of ctx and N1+(ctx) the number of
// distinct ones. Below the unigram level the model is uniform over the
// training vocabulary. Unseen contexts defer entirely to the shorter one.
//
// Counts live in a sorted trie: level j holds every distinct j-gram in
// lexicographic order, and the children of a (j-1)-gram are the contiguous
// j-grams extending it.
class NgramModel {
 public:
  static constexpr int kFormatVersion = 1;

  // Throws Error(kInsufficientData) if seq is shorter than `order`,
  // Error(kInvalidParam) for order < 1 or discount outside (0, 1).
  static NgramModel train(const TokenSequence& seq, int order, double discount);

  // Throws Error(kFormatError) on malformed input.
  static NgramModel load(std::istream& in);
  void save(std::ostream& out) const;

  int order() const { return order_; }
  double discount() const { return discount_; }
  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& shared_vocab() const {
    return vocab_;
  }
  std::size_t vocab_size() const { return vocab_->size(); }

  // Number of times `ngram` occurs in the training stream (0 if absent).
  std::uint64_t count(std::span<const SymbolId> ngram) const;

  // Number of distinct n-grams of length `level` (1..order).
  std::size_t distinct(int level) const;

  // P(word | history); only the last order-1 history tokens are used.
  double probability(SymbolId word, std::span<const SymbolId> history) const;

  // Draws the next token given `history`.
  SymbolId sample(std::span<const SymbolId> history, SeededRng& rng) const;

 private:
  struct Level {
    std::vector<SymbolId> word;
    std::vector<std::uint64_t> count;
    // Sum of the counts of preceding siblings.
    std::vector<std::uint64_t> sibling_prefix;
    // Children of node i are [child_begin[i], child_begin[i + 1]) in the next
    // level. Size is node count + 1; empty for the top level.
    std::vector<std::size_t> child_begin;
  };

  struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
    int level = 0;  // level index holding the children
  };

  // One entry per distinct n-gram of a level, in lexicographic order.
  struct Entry {
    std::size_t parent;
    SymbolId word;
    std::uint64_t count;
  };

  NgramModel() = default;
  void assemble(std::vector<std::vector<Entry>> entries);

  // Children of the context formed by `context` (oldest first), if seen.
  std::optional<Range> children(std::span<const SymbolId> context) const;
  std::uint64_t range_total(const Range& r) const;
  std::optional<std::size_t> find_child(const Range& r, SymbolId word) const;

  int order_ = 1;
  double discount_ = 0.75;
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Level> levels_;  // levels_[j - 1] holds j-grams
  std::uint64_t total_ = 0;    // sum of unigram counts
};

NgramModel ngram_train(const TokenSequence& seq, int order, double discount = 0.75);

// Samples `length` tokens, each conditioned on the preceding order-1
// generated tokens (shorter at the start).
TokenSequence ngram_generate(const NgramModel& model, std::size_t length,
                             SeededRng& rng);

// exp of the mean negative log-probability over the whole stream; the first
// order-1 tokens are scored with the shorter available history. Tokens are
// matched to the model vocabulary by surface form. Throws Error(kOovToken)
// and Error(kEmptyInput).
double ngram_perplexity(const NgramModel& model, const TokenSequence& seq);

}  // namespace scalecheck

#endif  // SCALECHECK_NGRAM_H_
