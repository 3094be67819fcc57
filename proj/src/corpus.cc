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

#include "scalecheck/corpus.h"

#include <fstream>
#include <sstream>

#include "scalecheck/error.h"

namespace scalecheck {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
         c == '\r';
}

// Length of the UTF-8 sequence starting at text[i], or 0 if malformed.
std::size_t utf8_length(std::string_view text, std::size_t i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  std::size_t len = 0;
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) {
    len = 2;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
  } else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) {
    len = 4;
  } else {
    return 0;
  }
  if (i + len > text.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return 0;
  }
  const auto second = static_cast<unsigned char>(text[i + 1]);
  if (len == 3 && lead == 0xE0 && second < 0xA0) return 0;  // overlong
  if (len == 3 && lead == 0xED && second >= 0xA0) return 0;  // surrogate
  if (len == 4 && lead == 0xF0 && second < 0x90) return 0;  // overlong
  if (len == 4 && lead == 0xF4 && second >= 0x90) return 0;  // > U+10FFFF
  return len;
}

bool is_numeric_token(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ',' && c != '.' && c != ':' && c != '/' && c != '-') {
      return false;
    }
  }
  return digit;
}

// Builds a sequence by mapping every token of `seq` through `rewrite`.
template <typename Rewrite>
TokenSequence rewrite_tokens(const TokenSequence& seq, Rewrite rewrite) {
  auto vocab = std::make_shared<Vocabulary>();
  constexpr auto kUnset = static_cast<SymbolId>(-1);
  std::vector<SymbolId> remap(seq.vocab_size(), kUnset);
  std::vector<SymbolId> ids;
  ids.reserve(seq.size());
  for (SymbolId old : seq.ids()) {
    if (remap[old] == kUnset) {
      remap[old] = vocab->intern(rewrite(old));
    }
    ids.push_back(remap[old]);
  }
  return TokenSequence(std::move(ids), std::move(vocab), seq.level());
}

}  // namespace

std::string_view level_name(Level level) {
  return level == Level::kWord ? "word" : "character";
}

SymbolId Vocabulary::intern(std::string_view surface) {
  auto it = index_.find(std::string(surface));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<SymbolId>(surfaces_.size());
  surfaces_.emplace_back(surface);
  index_.emplace(surfaces_.back(), id);
  return id;
}

std::optional<SymbolId> Vocabulary::find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenSequence::TokenSequence() : vocab_(std::make_shared<Vocabulary>()) {}

TokenSequence::TokenSequence(std::vector<SymbolId> ids,
                             std::shared_ptr<const Vocabulary> vocab,
                             Level level)
    : ids_(std::move(ids)), vocab_(std::move(vocab)), level_(level) {
  if (!vocab_) throw Error(ErrorCode::kInvalidParam, "null vocabulary");
  constexpr auto kUnset = static_cast<SymbolId>(-1);
  std::vector<SymbolId> remap(vocab_->size(), kUnset);
  SymbolId next = 0;
  bool identity = true;
  for (SymbolId id : ids_) {
    if (id >= vocab_->size()) {
      throw Error(ErrorCode::kInvalidParam, "token id outside vocabulary");
    }
    if (remap[id] == kUnset) {
      remap[id] = next++;
      identity = identity && remap[id] == id;
    }
  }
  if (identity && next == vocab_->size()) return;
  // Renumber so the vocabulary holds exactly the occurring symbols.
  auto compact = std::make_shared<Vocabulary>();
  std::vector<SymbolId> order(next);
  for (SymbolId id = 0; id < remap.size(); ++id) {
    if (remap[id] != kUnset) order[remap[id]] = id;
  }
  for (SymbolId old : order) compact->intern(vocab_->surface(old));
  for (auto& id : ids_) id = remap[id];
  vocab_ = std::move(compact);
}

TokenSequence TokenSequence::from_strings(std::span<const std::string> tokens,
                                          Level level) {
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<SymbolId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab->intern(t));
  return TokenSequence(std::move(ids), std::move(vocab), level);
}

std::string TokenSequence::render(std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i > 0) out.append(separator);
    out.append(vocab_->surface(ids_[i]));
  }
  return out;
}

std::size_t NgramHash::operator()(
    const std::vector<SymbolId>& key) const noexcept {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ULL;
  for (SymbolId id : key) {
    h ^= id;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

TokenSequence tokenize_words(std::string_view text) {
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<SymbolId> ids;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) ids.push_back(vocab->intern(text.substr(start, i - start)));
  }
  return TokenSequence(std::move(ids), std::move(vocab), Level::kWord);
}

TokenSequence tokenize_chars(std::string_view text) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<SymbolId> ids;
  ids.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t len = utf8_length(text, i);
    if (len == 0) {
      ids.push_back(vocab->intern(kReplacement));
      ++i;
    } else {
      ids.push_back(vocab->intern(text.substr(i, len)));
      i += len;
    }
  }
  return TokenSequence(std::move(ids), std::move(vocab), Level::kCharacter);
}

TokenSequence apply_unk(const TokenSequence& seq, std::uint64_t min_freq,
                        std::string_view unk_symbol) {
  const auto counts = type_counts(seq);
  return rewrite_tokens(seq, [&](SymbolId id) -> std::string_view {
    if (counts[id] < min_freq) return unk_symbol;
    return seq.vocab().surface(id);
  });
}

TokenSequence replace_numbers(const TokenSequence& seq,
                              std::string_view replacement) {
  return rewrite_tokens(seq, [&](SymbolId id) -> std::string_view {
    const std::string& s = seq.vocab().surface(id);
    if (is_numeric_token(s)) return replacement;
    return s;
  });
}

FrequencyTable frequency_table(const TokenSequence& seq, int order) {
  if (order < 1) throw Error(ErrorCode::kInvalidParam, "order must be >= 1");
  FrequencyTable table;
  table.order = order;
  const auto n = static_cast<std::size_t>(order);
  if (seq.size() < n) return table;
  auto ids = seq.ids();
  std::vector<SymbolId> key(n);
  for (std::size_t i = 0; i + n <= ids.size(); ++i) {
    std::copy(ids.begin() + i, ids.begin() + i + n, key.begin());
    ++table.counts[key];
  }
  table.total = ids.size() - n + 1;
  return table;
}

std::vector<std::uint64_t> type_counts(const TokenSequence& seq) {
  std::vector<std::uint64_t> counts(seq.vocab_size(), 0);
  for (SymbolId id : seq.ids()) ++counts[id];
  return counts;
}

std::vector<std::size_t> first_occurrence(const TokenSequence& seq) {
  std::vector<std::size_t> first(seq.vocab_size(), seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (first[seq[i]] == seq.size()) first[seq[i]] = i;
  }
  return first;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return buffer.str();
}

}  // namespace scalecheck
