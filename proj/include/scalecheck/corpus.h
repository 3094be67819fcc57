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

#ifndef SCALECHECK_CORPUS_H_
#define SCALECHECK_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scalecheck {

using SymbolId = std::uint32_t;

enum class Level { kWord, kCharacter };

std::string_view level_name(Level level);

// Bijection between symbol ids and surface strings. Ids are dense and
// assigned in interning order.
class Vocabulary {
 public:
  SymbolId intern(std::string_view surface);
  std::optional<SymbolId> find(std::string_view surface) const;
  const std::string& surface(SymbolId id) const { return surfaces_[id]; }
  std::size_t size() const { return surfaces_.size(); }

 private:
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, SymbolId> index_;
};

// Immutable token stream over a shared vocabulary. Every constructor path
// produces a vocabulary that holds exactly the symbols occurring in the
// stream, numbered by first occurrence.
class TokenSequence {
 public:
  TokenSequence();
  TokenSequence(std::vector<SymbolId> ids,
                std::shared_ptr<const Vocabulary> vocab, Level level);

  static TokenSequence from_strings(std::span<const std::string> tokens,
                                    Level level);

  std::span<const SymbolId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  SymbolId operator[](std::size_t i) const { return ids_[i]; }
  const std::string& surface(std::size_t i) const {
    return vocab_->surface(ids_[i]);
  }
  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& shared_vocab() const {
    return vocab_;
  }
  std::size_t vocab_size() const { return vocab_->size(); }
  Level level() const { return level_; }

  // Joins surfaces with `separator`. Word sequences rendered with a single
  // space re-tokenize to the same sequence.
  std::string render(std::string_view separator = " ") const;

 private:
  std::vector<SymbolId> ids_;
  std::shared_ptr<const Vocabulary> vocab_;
  Level level_ = Level::kWord;
};

struct NgramHash {
  std::size_t operator()(const std::vector<SymbolId>& key) const noexcept;
};

struct FrequencyTable {
  int order = 1;
  std::unordered_map<std::vector<SymbolId>, std::uint64_t, NgramHash> counts;
  std::uint64_t total = 0;
};

// Maximal runs of non-whitespace bytes (space, \t, \n, \v, \f, \r).
TokenSequence tokenize_words(std::string_view text);

// One token per decoded UTF-8 code point, whitespace included. Malformed
// bytes decode to U+FFFD, one per byte.
TokenSequence tokenize_chars(std::string_view text);

// Replaces every token whose frequency in `seq` is below `min_freq` with
// `unk_symbol`.
TokenSequence apply_unk(const TokenSequence& seq, std::uint64_t min_freq,
                        std::string_view unk_symbol = "<unk>");

// Replaces numeric tokens (digits with optional , . : / - separators, at
// least one digit) with `replacement`.
TokenSequence replace_numbers(const TokenSequence& seq,
                              std::string_view replacement = "N");

FrequencyTable frequency_table(const TokenSequence& seq, int order);

// Per-id occurrence counts, indexed by SymbolId.
std::vector<std::uint64_t> type_counts(const TokenSequence& seq);

// Position of each id's first occurrence, indexed by SymbolId; size() for
// ids that never occur.
std::vector<std::size_t> first_occurrence(const TokenSequence& seq);

// Throws Error(kIoError) when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace scalecheck

#endif  // SCALECHECK_CORPUS_H_
