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

#ifndef SCALECHECK_SCALING_H_
#define SCALECHECK_SCALING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scalecheck/corpus.h"
#include "scalecheck/powerlaw_fit.h"

namespace scalecheck {

// Parameters shared by the five analyses.
struct ScalingConfig {
  double log_base = 10.0;

  // Zipf judgment: fit over ranks [1, min(zipf_fit_max_rank, vocab)], the
  // law "holds" when the fit error is at most zipf_max_epsilon.
  std::size_t zipf_fit_max_rank = 1000;
  double zipf_max_epsilon = 0.5;

  std::size_t heaps_points = 50;

  std::size_t ebeling_grid_points = 20;
  std::size_t ebeling_min_l = 10;
  std::size_t ebeling_min_segments = 10;
  std::size_t ebeling_min_length = 100;

  std::size_t taylor_l = 5620;

  std::size_t lrc_q = 16;
  std::size_t lrc_max_lag = 100;
  std::size_t lrc_min_intervals = 200;
};

enum class Correlation { kCorrelated, kWeak, kNo };

std::string_view correlation_name(Correlation c);

struct ZipfResult {
  LogLogPoints unigram_points;  // (rank, frequency)
  LogLogPoints bigram_points;
  bool holds = false;
  std::optional<PowerLawFit> alpha_fit;  // exponent is -alpha

  double alpha() const { return alpha_fit ? -alpha_fit->exponent : 0.0; }
};

struct HeapsResult {
  LogLogPoints points;  // (prefix length n, vocabulary size v(n))
  PowerLawFit fit;
};

struct EbelingResult {
  LogLogPoints points;  // (segment length l, m(l))
  PowerLawFit fit;
  bool applicable = true;
};

struct TaylorResult {
  std::size_t segment_size = 0;
  std::size_t segments = 0;
  LogLogPoints points;          // (mu_k, sigma_k) per retained type
  std::vector<SymbolId> types;  // type of each point
  PowerLawFit fit;
  std::size_t excluded_zero_sigma = 0;
};

struct AcfPoint {
  std::size_t lag = 0;
  double value = 0.0;
};

struct LrcResult {
  std::size_t q = 0;
  std::size_t rare_types = 0;
  std::vector<std::uint64_t> interval_series;
  std::vector<AcfPoint> acf;
  Correlation classification = Correlation::kNo;
  std::optional<PowerLawFit> fit;  // exponent is -xi

  double xi() const { return fit ? -fit->exponent : 0.0; }
};

// Rank-frequency analysis. Ranks follow descending frequency, ties broken
// by first occurrence. Throws Error(kEmptyInput).
ZipfResult zipf_analysis(const TokenSequence& seq,
                         const ScalingConfig& config = {});

// Vocabulary growth at log-spaced prefix lengths ending at the full length.
// Throws Error(kEmptyInput).
HeapsResult heaps_analysis(const TokenSequence& seq,
                           const ScalingConfig& config = {});

// Sum over symbols of the across-segment variance of per-segment counts,
// for non-overlapping segments of length l. Trailing symbols that do not
// fill a segment are ignored. Requires at least one full segment.
double ebeling_fluctuation(const TokenSequence& seq, std::size_t segment_length);

// Ebeling's fluctuation exponent over a log-spaced grid of segment lengths.
// Throws Error(kNotApplicable) on word-level input or a one-symbol
// alphabet, Error(kInsufficientLength) when the grid has fewer than 2 sizes.
EbelingResult ebeling_analysis(const TokenSequence& seq,
                               const ScalingConfig& config = {});

// Taylor's law sigma ∝ mu^zeta over word types for segments of length l.
// Throws Error(kInsufficientSegments), Error(kAllSigmaZero).
TaylorResult taylor_analysis(const TokenSequence& seq, std::size_t segment_length,
                             const ScalingConfig& config = {});

// Autocorrelation c(s) for s = 1..max_lag using the global mean and
// population variance, clamped to [-1, 1]. Throws Error(kSeriesTooShort),
// Error(kZeroVariance).
std::vector<AcfPoint> autocorrelation(std::span<const double> series,
                                      std::size_t max_lag);

// "No" if more than one negative value for s <= 10, else "Weak" if more
// than one for s <= 100, else correlated.
Correlation classify_correlation(std::span<const AcfPoint> acf);

// Word types in ascending frequency order (ties by first occurrence) until
// their cumulative count first reaches N / q. One flag per SymbolId.
std::vector<bool> rare_word_set(const TokenSequence& seq, std::size_t q);

// Distances between consecutive occurrences of rare-set tokens.
std::vector<std::uint64_t> return_intervals(const TokenSequence& seq,
                                            const std::vector<bool>& rare);

// Long-range correlation of rare-word return intervals.
// Throws Error(kTooFewIntervals).
LrcResult lrc_analysis(const TokenSequence& seq, std::size_t q,
                       const ScalingConfig& config = {});

// Up to `count` distinct integers log-spaced over [lo, hi], ascending, always
// including both ends.
std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi,
                                         std::size_t count);

}  // namespace scalecheck

#endif  // SCALECHECK_SCALING_H_
