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

#include "scalecheck/scaling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "scalecheck/error.h"

namespace scalecheck {

namespace {

using Int128 = unsigned __int128;

struct RankedCount {
  std::uint64_t count;
  std::size_t first;
};

LogLogPoints rank_frequency(std::vector<RankedCount> counts) {
  std::sort(counts.begin(), counts.end(),
            [](const RankedCount& a, const RankedCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.first < b.first;
            });
  LogLogPoints points;
  points.reserve(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    points.push_back({static_cast<double>(r + 1),
                      static_cast<double>(counts[r].count)});
  }
  return points;
}

// Accumulates per-symbol sums of per-segment counts and of their squares
// over the floor(N / l) full segments.
struct SegmentMoments {
  std::size_t segments = 0;
  std::vector<std::uint64_t> sum;
  std::vector<std::uint64_t> sum_sq;
};

SegmentMoments segment_moments(const TokenSequence& seq, std::size_t l) {
  SegmentMoments m;
  m.segments = seq.size() / l;
  m.sum.assign(seq.vocab_size(), 0);
  m.sum_sq.assign(seq.vocab_size(), 0);
  std::vector<std::uint64_t> local(seq.vocab_size(), 0);
  std::vector<SymbolId> touched;
  auto ids = seq.ids();
  for (std::size_t s = 0; s < m.segments; ++s) {
    touched.clear();
    for (std::size_t i = s * l; i < (s + 1) * l; ++i) {
      if (local[ids[i]]++ == 0) touched.push_back(ids[i]);
    }
    for (SymbolId k : touched) {
      m.sum[k] += local[k];
      m.sum_sq[k] += local[k] * local[k];
      local[k] = 0;
    }
  }
  return m;
}

// S^2 times the population variance, exact in integers.
Int128 scaled_variance(const SegmentMoments& m, std::size_t k) {
  const Int128 s = m.segments;
  return s * m.sum_sq[k] - static_cast<Int128>(m.sum[k]) * m.sum[k];
}

}  // namespace

std::string_view correlation_name(Correlation c) {
  switch (c) {
    case Correlation::kCorrelated: return "Correlated";
    case Correlation::kWeak: return "Weak";
    case Correlation::kNo: return "No";
  }
  return "No";
}

std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi,
                                         std::size_t count) {
  std::vector<std::size_t> grid;
  if (lo == 0 || hi < lo || count == 0) return grid;
  if (count == 1 || lo == hi) return {hi};
  const double log_lo = std::log(static_cast<double>(lo));
  const double log_hi = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    auto v = static_cast<std::size_t>(std::llround(std::exp(log_lo + t * (log_hi - log_lo))));
    v = std::clamp(v, lo, hi);
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  if (grid.back() != hi) grid.push_back(hi);
  return grid;
}

ZipfResult zipf_analysis(const TokenSequence& seq, const ScalingConfig& config) {
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "zipf: empty sequence");
  ZipfResult result;

  const auto counts = type_counts(seq);
  const auto first = first_occurrence(seq);
  std::vector<RankedCount> unigrams(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) unigrams[k] = {counts[k], first[k]};
  result.unigram_points = rank_frequency(std::move(unigrams));

  std::unordered_map<std::uint64_t, RankedCount> bigram_index;
  auto ids = seq.ids();
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    const std::uint64_t key = (static_cast<std::uint64_t>(ids[i]) << 32) | ids[i + 1];
    auto [it, inserted] = bigram_index.try_emplace(key, RankedCount{0, i});
    ++it->second.count;
  }
  std::vector<RankedCount> bigrams;
  bigrams.reserve(bigram_index.size());
  for (const auto& [key, rc] : bigram_index) bigrams.push_back(rc);
  result.bigram_points = rank_frequency(std::move(bigrams));

  const std::size_t head = std::min(config.zipf_fit_max_rank, result.unigram_points.size());
  if (head >= 2) {
    result.alpha_fit = fit_power_law(
        std::span(result.unigram_points).first(head), config.log_base);
    result.holds = result.alpha_fit->epsilon <= config.zipf_max_epsilon;
  }
  return result;
}

HeapsResult heaps_analysis(const TokenSequence& seq, const ScalingConfig& config) {
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "heaps: empty sequence");
  const auto grid = log_spaced_grid(1, seq.size(), config.heaps_points);
  HeapsResult result;
  result.points.reserve(grid.size());
  std::vector<bool> seen(seq.vocab_size(), false);
  std::size_t vocab = 0;
  std::size_t n = 0;
  for (std::size_t target : grid) {
    for (; n < target; ++n) {
      if (!seen[seq[n]]) {
        seen[seq[n]] = true;
        ++vocab;
      }
    }
    result.points.push_back({static_cast<double>(target), static_cast<double>(vocab)});
  }
  result.fit = fit_power_law(result.points, config.log_base);
  return result;
}

double ebeling_fluctuation(const TokenSequence& seq, std::size_t segment_length) {
  if (segment_length == 0 || seq.size() / segment_length == 0) {
    throw Error(ErrorCode::kInsufficientSegments,
                "ebeling: no full segment of length " + std::to_string(segment_length));
  }
  const auto m = segment_moments(seq, segment_length);
  Int128 total = 0;
  for (std::size_t k = 0; k < seq.vocab_size(); ++k) total += scaled_variance(m, k);
  const double s = static_cast<double>(m.segments);
  return static_cast<double>(total) / (s * s);
}

EbelingResult ebeling_analysis(const TokenSequence& seq, const ScalingConfig& config) {
  if (seq.level() != Level::kCharacter) {
    throw Error(ErrorCode::kNotApplicable, "ebeling: defined for character sequences only");
  }
  if (seq.size() < config.ebeling_min_length) {
    throw Error(ErrorCode::kInsufficientLength,
                "ebeling: need at least " + std::to_string(config.ebeling_min_length) +
                    " characters, got " + std::to_string(seq.size()));
  }
  if (seq.vocab_size() < 2) {
    throw Error(ErrorCode::kNotApplicable, "ebeling: alphabet has a single symbol");
  }
  const std::size_t n = seq.size();
  const std::size_t min_segments = std::max<std::size_t>(config.ebeling_min_segments, 1);
  // Upper end N/50; short inputs fall back to the largest l that still
  // leaves the minimum segment count.
  std::size_t l_max = n / 50;
  if (l_max < 2 * config.ebeling_min_l) l_max = n / min_segments;
  const auto grid = log_spaced_grid(config.ebeling_min_l, l_max, config.ebeling_grid_points);
  EbelingResult result;
  for (std::size_t l : grid) {
    if (n / l < min_segments) continue;
    const double m = ebeling_fluctuation(seq, l);
    if (m > 0.0) result.points.push_back({static_cast<double>(l), m});
  }
  if (result.points.size() < 2) {
    throw Error(ErrorCode::kInsufficientLength,
                "ebeling: fewer than 2 usable segment lengths for " + std::to_string(n) +
                    " characters");
  }
  result.fit = fit_power_law(result.points, config.log_base);
  return result;
}

TaylorResult taylor_analysis(const TokenSequence& seq, std::size_t segment_length,
                             const ScalingConfig& config) {
  if (segment_length < 2) {
    throw Error(ErrorCode::kInvalidParam, "taylor: segment length must be >= 2");
  }
  if (seq.size() / segment_length < 2) {
    throw Error(ErrorCode::kInsufficientSegments,
                "taylor: " + std::to_string(seq.size()) + " tokens give fewer than 2 segments of " +
                    std::to_string(segment_length));
  }
  const auto m = segment_moments(seq, segment_length);
  const double s = static_cast<double>(m.segments);
  TaylorResult result;
  result.segment_size = segment_length;
  result.segments = m.segments;
  for (std::size_t k = 0; k < seq.vocab_size(); ++k) {
    if (m.sum[k] == 0) continue;
    const Int128 var = scaled_variance(m, k);
    if (var == 0) {
      ++result.excluded_zero_sigma;
      continue;
    }
    const double mu = static_cast<double>(m.sum[k]) / s;
    const double sigma = std::sqrt(static_cast<double>(var)) / s;
    result.points.push_back({mu, sigma});
    result.types.push_back(static_cast<SymbolId>(k));
  }
  if (result.points.empty()) {
    throw Error(ErrorCode::kAllSigmaZero, "taylor: every word type has zero deviation");
  }
  result.fit = fit_power_law(result.points, config.log_base);
  return result;
}

std::vector<AcfPoint> autocorrelation(std::span<const double> series, std::size_t max_lag) {
  if (max_lag == 0 || series.size() <= max_lag) {
    throw Error(ErrorCode::kSeriesTooShort,
                "acf: series of length " + std::to_string(series.size()) +
                    " too short for max lag " + std::to_string(max_lag));
  }
  const double n = static_cast<double>(series.size());
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  std::vector<double> centered(series.size());
  double var = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    centered[i] = series[i] - mean;
    var += centered[i] * centered[i];
  }
  var /= n;
  if (!(var > 0.0)) throw Error(ErrorCode::kZeroVariance, "acf: series has zero variance");
  std::vector<AcfPoint> acf;
  acf.reserve(max_lag);
  for (std::size_t s = 1; s <= max_lag; ++s) {
    double cov = 0.0;
    for (std::size_t i = 0; i + s < centered.size(); ++i) cov += centered[i] * centered[i + s];
    cov /= static_cast<double>(series.size() - s);
    acf.push_back({s, std::clamp(cov / var, -1.0, 1.0)});
  }
  return acf;
}

Correlation classify_correlation(std::span<const AcfPoint> acf) {
  std::size_t neg_short = 0;
  std::size_t neg_long = 0;
  for (const auto& p : acf) {
    if (p.value >= 0.0) continue;
    if (p.lag <= 10) ++neg_short;
    if (p.lag <= 100) ++neg_long;
  }
  if (neg_short > 1) return Correlation::kNo;
  if (neg_long > 1) return Correlation::kWeak;
  return Correlation::kCorrelated;
}

std::vector<bool> rare_word_set(const TokenSequence& seq, std::size_t q) {
  if (q < 2) throw Error(ErrorCode::kInvalidParam, "lrc: q must be >= 2");
  const auto counts = type_counts(seq);
  const auto first = first_occurrence(seq);
  std::vector<SymbolId> order(counts.size());
  std::iota(order.begin(), order.end(), SymbolId{0});
  std::sort(order.begin(), order.end(), [&](SymbolId a, SymbolId b) {
    if (counts[a] != counts[b]) return counts[a] < counts[b];
    return first[a] < first[b];
  });
  std::vector<bool> rare(counts.size(), false);
  // cumulative >= N / q, compared in integers as cumulative * q >= N.
  std::uint64_t cumulative = 0;
  for (SymbolId k : order) {
    if (static_cast<Int128>(cumulative) * q >= seq.size()) break;
    rare[k] = true;
    cumulative += counts[k];
  }
  return rare;
}

std::vector<std::uint64_t> return_intervals(const TokenSequence& seq,
                                            const std::vector<bool>& rare) {
  std::vector<std::uint64_t> intervals;
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!rare[seq[i]]) continue;
    if (last) intervals.push_back(i - *last);
    last = i;
  }
  return intervals;
}

LrcResult lrc_analysis(const TokenSequence& seq, std::size_t q, const ScalingConfig& config) {
  LrcResult result;
  result.q = q;
  const auto rare = rare_word_set(seq, q);
  result.rare_types = static_cast<std::size_t>(std::count(rare.begin(), rare.end(), true));
  result.interval_series = return_intervals(seq, rare);
  if (result.interval_series.size() < config.lrc_min_intervals) {
    throw Error(ErrorCode::kTooFewIntervals,
                "lrc: " + std::to_string(result.interval_series.size()) +
                    " return intervals, need " + std::to_string(config.lrc_min_intervals));
  }
  std::vector<double> series(result.interval_series.begin(), result.interval_series.end());
  const std::size_t max_lag = std::min(config.lrc_max_lag, series.size() / 4);
  result.acf = autocorrelation(series, max_lag);
  result.classification = classify_correlation(result.acf);
  if (result.classification == Correlation::kCorrelated) {
    LogLogPoints points;
    for (const auto& p : result.acf) {
      if (p.lag <= 100 && p.value > 0.0) {
        points.push_back({static_cast<double>(p.lag), p.value});
      }
    }
    result.fit = fit_power_law(points, config.log_base);
  }
  return result;
}

}  // namespace scalecheck
