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

#include "scalecheck/ngram.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "scalecheck/error.h"
#include "text_format.h"

namespace scalecheck {

namespace {

constexpr std::string_view kMagic = "scalecheck-ngram";

void check_params(int order, double discount) {
  if (order < 1) throw Error(ErrorCode::kInvalidParam, "ngram: order must be >= 1");
  if (!(discount > 0.0 && discount < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "ngram: discount must lie in (0, 1)");
  }
}

std::string expect_field(const std::vector<std::string>& fields,
                         std::string_view key, std::size_t arity) {
  if (fields.size() != arity + 1 || fields[0] != key) {
    throw Error(ErrorCode::kFormatError, "ngram: expected '" + std::string(key) + "' line");
  }
  return fields[1];
}

}  // namespace

NgramModel NgramModel::train(const TokenSequence& seq, int order, double discount) {
  check_params(order, discount);
  if (seq.empty() || seq.size() < static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::kInsufficientData,
                "ngram: " + std::to_string(seq.size()) + " tokens cannot train order " +
                    std::to_string(order));
  }
  const auto ids = seq.ids();
  const std::size_t n = ids.size();
  const auto width = static_cast<std::size_t>(order);
  auto window = [&](std::size_t p, std::size_t len) {
    return ids.subspan(p, std::min(len, n - p));
  };
  auto less = [&](std::size_t a, std::size_t b, std::size_t len) {
    const auto wa = window(a, len);
    const auto wb = window(b, len);
    return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
  };

  std::vector<std::size_t> sorted(n);
  std::iota(sorted.begin(), sorted.end(), std::size_t{0});
  std::sort(sorted.begin(), sorted.end(),
            [&](std::size_t a, std::size_t b) { return less(a, b, width); });

  std::vector<std::vector<Entry>> entries(width);
  std::vector<std::size_t> prev_reps;
  for (std::size_t j = 1; j <= width; ++j) {
    std::vector<std::size_t> reps;
    auto& level = entries[j - 1];
    std::size_t parent = 0;
    for (std::size_t p : sorted) {
      if (p + j > n) continue;
      if (!reps.empty() && !less(reps.back(), p, j)) {
        ++level.back().count;
        continue;
      }
      if (j > 1) {
        while (less(prev_reps[parent], p, j - 1)) ++parent;
      }
      reps.push_back(p);
      level.push_back({parent, ids[p + j - 1], 1});
    }
    prev_reps = std::move(reps);
  }

  NgramModel model;
  model.order_ = order;
  model.discount_ = discount;
  model.vocab_ = seq.shared_vocab();
  model.assemble(std::move(entries));
  return model;
}

void NgramModel::assemble(std::vector<std::vector<Entry>> entries) {
  const std::size_t v = vocab_->size();
  if (entries.empty() || entries[0].size() != v) {
    throw Error(ErrorCode::kFormatError, "ngram: unigram level must cover the vocabulary");
  }
  for (std::size_t k = 0; k < v; ++k) {
    if (entries[0][k].word != k || entries[0][k].count == 0) {
      throw Error(ErrorCode::kFormatError, "ngram: malformed unigram level");
    }
  }
  levels_.assign(entries.size(), Level{});
  for (std::size_t j = 0; j < entries.size(); ++j) {
    auto& level = levels_[j];
    const auto& es = entries[j];
    level.word.reserve(es.size());
    level.count.reserve(es.size());
    level.sibling_prefix.reserve(es.size());
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (i > 0 && es[i].parent != es[i - 1].parent) {
        if (es[i].parent < es[i - 1].parent) {
          throw Error(ErrorCode::kFormatError, "ngram: n-grams out of order");
        }
        running = 0;
      }
      if (es[i].count == 0) throw Error(ErrorCode::kFormatError, "ngram: zero count");
      level.word.push_back(es[i].word);
      level.count.push_back(es[i].count);
      level.sibling_prefix.push_back(running);
      running += es[i].count;
    }
    if (j + 1 < entries.size()) {
      const auto& next = entries[j + 1];
      level.child_begin.assign(es.size() + 1, 0);
      for (const auto& e : next) {
        if (e.parent >= es.size()) throw Error(ErrorCode::kFormatError, "ngram: orphan n-gram");
        ++level.child_begin[e.parent + 1];
      }
      std::partial_sum(level.child_begin.begin(), level.child_begin.end(),
                       level.child_begin.begin());
    }
  }
  total_ = std::accumulate(levels_[0].count.begin(), levels_[0].count.end(), std::uint64_t{0});
}

std::uint64_t NgramModel::range_total(const Range& r) const {
  const auto& level = levels_[r.level];
  return level.sibling_prefix[r.end - 1] + level.count[r.end - 1];
}

std::optional<std::size_t> NgramModel::find_child(const Range& r, SymbolId word) const {
  const auto& words = levels_[r.level].word;
  const auto first = words.begin() + static_cast<std::ptrdiff_t>(r.begin);
  const auto last = words.begin() + static_cast<std::ptrdiff_t>(r.end);
  const auto it = std::lower_bound(first, last, word);
  if (it == last || *it != word) return std::nullopt;
  return static_cast<std::size_t>(it - words.begin());
}

std::optional<NgramModel::Range> NgramModel::children(
    std::span<const SymbolId> context) const {
  if (context.size() >= levels_.size()) return std::nullopt;
  Range r{0, vocab_->size(), 0};
  for (SymbolId w : context) {
    const auto node = find_child(r, w);
    if (!node) return std::nullopt;
    const auto& level = levels_[r.level];
    if (level.child_begin.empty()) return std::nullopt;
    r = {level.child_begin[*node], level.child_begin[*node + 1], r.level + 1};
    if (r.begin == r.end) return std::nullopt;
  }
  return r;
}

std::uint64_t NgramModel::count(std::span<const SymbolId> ngram) const {
  if (ngram.empty() || ngram.size() > levels_.size()) return 0;
  const auto ctx = children(ngram.first(ngram.size() - 1));
  if (!ctx) return 0;
  const auto node = find_child(*ctx, ngram.back());
  return node ? levels_[ctx->level].count[*node] : 0;
}

std::size_t NgramModel::distinct(int level) const {
  if (level < 1 || level > order_) return 0;
  return levels_[static_cast<std::size_t>(level - 1)].word.size();
}

double NgramModel::probability(SymbolId word, std::span<const SymbolId> history) const {
  if (word >= vocab_->size()) return 0.0;
  const std::size_t keep = std::min(history.size(), static_cast<std::size_t>(order_ - 1));
  const auto h = history.last(keep);
  double p = 1.0 / static_cast<double>(vocab_->size());
  for (std::size_t j = 0; j <= keep; ++j) {
    const auto r = children(h.last(j));
    if (!r) break;
    const auto total = static_cast<double>(range_total(*r));
    const auto types = static_cast<double>(r->end - r->begin);
    const auto node = find_child(*r, word);
    const double c = node ? static_cast<double>(levels_[r->level].count[*node]) : 0.0;
    p = (std::max(c - discount_, 0.0) + discount_ * types * p) / total;
  }
  return p;
}

SymbolId NgramModel::sample(std::span<const SymbolId> history, SeededRng& rng) const {
  const std::size_t keep = std::min(history.size(), static_cast<std::size_t>(order_ - 1));
  const auto h = history.last(keep);
  std::vector<Range> chain;
  for (std::size_t j = 0; j <= keep; ++j) {
    const auto r = children(h.last(j));
    if (!r) break;
    chain.push_back(*r);
  }
  // The interpolated distribution is a mixture: take the longest context's
  // discounted mass with probability 1 - lambda, otherwise back off.
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Range& r = *it;
    const auto& level = levels_[r.level];
    const auto total = static_cast<double>(range_total(r));
    const std::size_t types = r.end - r.begin;
    const double lambda = discount_ * static_cast<double>(types) / total;
    if (rng.uniform() < lambda) continue;
    const double target = rng.uniform() * (total - discount_ * static_cast<double>(types));
    std::size_t lo = 0;
    std::size_t hi = types - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const std::size_t i = r.begin + mid;
      const double through = static_cast<double>(level.sibling_prefix[i] + level.count[i]) -
                             discount_ * static_cast<double>(mid + 1);
      if (through > target) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return level.word[r.begin + lo];
  }
  return static_cast<SymbolId>(rng.below(vocab_->size()));
}

void NgramModel::save(std::ostream& out) const {
  out << kMagic << '\t' << kFormatVersion << '\n';
  out << "order\t" << order_ << '\n';
  out << "discount\t" << text_format::format_double(discount_) << '\n';
  out << "vocab\t" << vocab_->size() << '\n';
  for (SymbolId k = 0; k < vocab_->size(); ++k) {
    out << text_format::escape(vocab_->surface(k)) << '\n';
  }
  // Rebuild each n-gram from parent links while walking the levels in order.
  std::vector<std::vector<SymbolId>> prev;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const auto& level = levels_[j];
    std::vector<std::vector<SymbolId>> current(level.word.size());
    if (j == 0) {
      for (std::size_t i = 0; i < level.word.size(); ++i) current[i] = {level.word[i]};
    } else {
      const auto& parent_begin = levels_[j - 1].child_begin;
      for (std::size_t p = 0; p + 1 < parent_begin.size(); ++p) {
        for (std::size_t i = parent_begin[p]; i < parent_begin[p + 1]; ++i) {
          current[i] = prev[p];
          current[i].push_back(level.word[i]);
        }
      }
    }
    out << "level\t" << (j + 1) << '\t' << level.word.size() << '\n';
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t t = 0; t < current[i].size(); ++t) {
        if (t > 0) out << ' ';
        out << current[i][t];
      }
      out << '\t' << level.count[i] << '\n';
    }
    prev = std::move(current);
  }
  out << "end\n";
}

NgramModel NgramModel::load(std::istream& in) {
  using text_format::next_line;
  using text_format::parse_uint;
  using text_format::split;

  auto header = split(next_line(in, "header"), '\t');
  if (header.size() != 2 || header[0] != kMagic) {
    throw Error(ErrorCode::kFormatError, "ngram: not a scalecheck n-gram model");
  }
  if (parse_uint(header[1]) != static_cast<std::uint64_t>(kFormatVersion)) {
    throw Error(ErrorCode::kFormatError, "ngram: unsupported format version");
  }
  NgramModel model;
  model.order_ = static_cast<int>(parse_uint(expect_field(split(next_line(in, "order"), '\t'), "order", 1)));
  model.discount_ = text_format::parse_double(
      expect_field(split(next_line(in, "discount"), '\t'), "discount", 1));
  check_params(model.order_, model.discount_);
  const auto v = parse_uint(expect_field(split(next_line(in, "vocab"), '\t'), "vocab", 1));
  auto vocab = std::make_shared<Vocabulary>();
  for (std::uint64_t k = 0; k < v; ++k) {
    vocab->intern(text_format::unescape(next_line(in, "vocabulary")));
    if (vocab->size() != k + 1) throw Error(ErrorCode::kFormatError, "ngram: duplicate vocabulary entry");
  }
  model.vocab_ = std::move(vocab);

  std::vector<std::vector<Entry>> entries(static_cast<std::size_t>(model.order_));
  std::vector<std::vector<SymbolId>> prev;
  for (std::size_t j = 1; j <= entries.size(); ++j) {
    const auto fields = split(next_line(in, "level header"), '\t');
    if (fields.size() != 3 || fields[0] != "level" || parse_uint(fields[1]) != j) {
      throw Error(ErrorCode::kFormatError, "ngram: expected level " + std::to_string(j));
    }
    const auto rows = parse_uint(fields[2]);
    std::vector<std::pair<std::vector<SymbolId>, std::uint64_t>> grams;
    grams.reserve(rows);
    for (std::uint64_t i = 0; i < rows; ++i) {
      const auto cols = split(next_line(in, "n-gram"), '\t');
      if (cols.size() != 2) throw Error(ErrorCode::kFormatError, "ngram: bad n-gram line");
      std::vector<SymbolId> key;
      for (auto tok : split(cols[0], ' ')) {
        const auto id = parse_uint(tok);
        if (id >= v) throw Error(ErrorCode::kFormatError, "ngram: id outside vocabulary");
        key.push_back(static_cast<SymbolId>(id));
      }
      if (key.size() != j) throw Error(ErrorCode::kFormatError, "ngram: wrong n-gram length");
      grams.emplace_back(std::move(key), parse_uint(cols[1]));
    }
    std::sort(grams.begin(), grams.end());
    auto& level = entries[j - 1];
    std::vector<std::vector<SymbolId>> keys;
    keys.reserve(grams.size());
    for (auto& [key, count] : grams) {
      if (!keys.empty() && keys.back() == key) {
        throw Error(ErrorCode::kFormatError, "ngram: duplicate n-gram");
      }
      std::size_t parent = 0;
      if (j > 1) {
        const std::vector<SymbolId> prefix(key.begin(), key.end() - 1);
        const auto it = std::lower_bound(prev.begin(), prev.end(), prefix);
        if (it == prev.end() || *it != prefix) {
          throw Error(ErrorCode::kFormatError, "ngram: n-gram without its prefix");
        }
        parent = static_cast<std::size_t>(it - prev.begin());
      }
      level.push_back({parent, key.back(), count});
      keys.push_back(std::move(key));
    }
    prev = std::move(keys);
  }
  if (next_line(in, "trailer") != "end") throw Error(ErrorCode::kFormatError, "ngram: missing end");
  model.assemble(std::move(entries));
  return model;
}

NgramModel ngram_train(const TokenSequence& seq, int order, double discount) {
  return NgramModel::train(seq, order, discount);
}

TokenSequence ngram_generate(const NgramModel& model, std::size_t length, SeededRng& rng) {
  std::vector<SymbolId> ids;
  ids.reserve(length);
  const auto context = static_cast<std::size_t>(model.order() - 1);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t keep = std::min(context, ids.size());
    const std::span<const SymbolId> history(ids.data() + ids.size() - keep, keep);
    ids.push_back(model.sample(history, rng));
  }
  return TokenSequence(std::move(ids), model.shared_vocab(), Level::kWord);
}

double ngram_perplexity(const NgramModel& model, const TokenSequence& seq) {
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "perplexity: empty sequence");
  std::vector<SymbolId> remap(seq.vocab_size());
  for (SymbolId k = 0; k < seq.vocab_size(); ++k) {
    const auto id = model.vocab().find(seq.vocab().surface(k));
    if (!id) {
      throw Error(ErrorCode::kOovToken,
                  "perplexity: token '" + seq.vocab().surface(k) + "' not in model vocabulary");
    }
    remap[k] = *id;
  }
  std::vector<SymbolId> ids;
  ids.reserve(seq.size());
  for (SymbolId k : seq.ids()) ids.push_back(remap[k]);
  const auto context = static_cast<std::size_t>(model.order() - 1);
  double log_sum = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::size_t keep = std::min(context, i);
    const std::span<const SymbolId> history(ids.data() + i - keep, keep);
    log_sum += std::log(model.probability(ids[i], history));
  }
  return std::exp(-log_sum / static_cast<double>(ids.size()));
}

}  // namespace scalecheck
