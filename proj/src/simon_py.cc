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

#include "scalecheck/simon_py.h"

#include <cassert>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "scalecheck/error.h"

namespace scalecheck {

namespace {

TokenSequence as_sequence(std::vector<SymbolId> ids, std::size_t types) {
  auto vocab = std::make_shared<Vocabulary>();
  for (std::size_t k = 0; k < types; ++k) vocab->intern("w" + std::to_string(k));
  return TokenSequence(std::move(ids), std::move(vocab), Level::kWord);
}

void check_length(std::size_t length) {
  if (length == 0) throw Error(ErrorCode::kInvalidParam, "length must be >= 1");
}

}  // namespace

void validate(const SimonParams& p) {
  if (!(p.a > 0.0 && p.a < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "simon: a must lie in (0, 1)");
  }
}

void validate(const PyParams& p) {
  if (!(p.a >= 0.0 && p.a < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "pitman-yor: a must lie in [0, 1)");
  }
  if (!(p.b >= 0.0) || !std::isfinite(p.b)) {
    throw Error(ErrorCode::kInvalidParam, "pitman-yor: b must be >= 0");
  }
}

TokenSequence simon_generate(const SimonParams& params, std::size_t length,
                             SeededRng& rng) {
  validate(params);
  check_length(length);
  std::vector<SymbolId> ids;
  ids.reserve(length);
  ids.push_back(0);
  SymbolId types = 1;
  for (std::size_t t = 1; t < length; ++t) {
    if (rng.bernoulli(params.a)) {
      ids.push_back(types++);
    } else {
      // n_k / t: pick a past position uniformly.
      ids.push_back(ids[rng.below(t)]);
    }
  }
  return as_sequence(std::move(ids), types);
}

TokenSequence py_generate(const PyParams& params, std::size_t length,
                          SeededRng& rng) {
  validate(params);
  check_length(length);
  const double a = params.a;
  const double b = params.b;
  std::vector<SymbolId> ids;
  ids.reserve(length);
  ids.push_back(0);
  std::vector<std::uint64_t> counts{1};
  for (std::size_t t = 1; t < length; ++t) {
    const double k = static_cast<double>(counts.size());
    const double td = static_cast<double>(t);
    const double p_new = (a * k + b) / (td + b);
    // Existing types carry (t - aK) / (t + b) in total.
    assert(std::abs((td - a * k) / (td + b) + p_new - 1.0) < 1e-12);
    SymbolId next;
    if (rng.uniform() < p_new) {
      next = static_cast<SymbolId>(counts.size());
      counts.push_back(0);
    } else {
      // Proposal n_k / t, accepted with (n_k - a) / n_k, yields (n_k - a).
      while (true) {
        next = ids[rng.below(t)];
        const double n = static_cast<double>(counts[next]);
        if (a == 0.0 || rng.uniform() * n < n - a) break;
      }
    }
    ++counts[next];
    ids.push_back(next);
  }
  return as_sequence(std::move(ids), counts.size());
}

}  // namespace scalecheck
