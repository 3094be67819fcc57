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

#ifndef SCALECHECK_REPORT_H_
#define SCALECHECK_REPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "scalecheck/corpus.h"
#include "scalecheck/scaling.h"

namespace scalecheck {

inline constexpr int kReportFormatVersion = 1;

struct AnalysisConfig {
  ScalingConfig scaling;
  // Long-memory markers: exponents at or above these exceed the i.i.d. value.
  double eta_threshold = 1.05;
  double zeta_threshold = 0.52;
};

nlohmann::json config_to_json(const AnalysisConfig& config);

enum class CellStatus { kOk, kNotApplicable, kFailed };

std::string_view cell_status_name(CellStatus status);

// Outcome of one analysis inside a report. A failure is recorded here
// instead of aborting the whole report.
template <typename Result>
struct Cell {
  CellStatus status = CellStatus::kFailed;
  std::optional<Result> result;
  std::string error;  // error code name when not ok
  std::string message;
};

struct ReportMetadata {
  std::string input_path;
  std::string char_input_path;
  std::size_t token_count = 0;
  std::size_t vocab_size = 0;
  std::size_t char_count = 0;
  std::optional<std::uint64_t> seed;
  std::string rng;
  nlohmann::json config;
};

struct ModelReport {
  std::string model_name;
  std::optional<double> perplexity;
  Cell<ZipfResult> zipf;
  Cell<HeapsResult> heaps;
  Cell<EbelingResult> ebeling;
  Cell<TaylorResult> taylor;
  Cell<LrcResult> lrc;
  ReportMetadata metadata;

  bool any_failed() const;
  bool all_failed() const;
};

// Runs the five analyses (concurrently) on a word stream and an optional
// character stream of the same text. Ebeling is NotApplicable without one.
ModelReport analyze_all(const TokenSequence& words,
                        const TokenSequence* chars,
                        const AnalysisConfig& config = {},
                        std::string model_name = "text");

// Projection of a report onto the summary table columns.
struct SummaryCell {
  CellStatus status = CellStatus::kFailed;
  std::optional<double> exponent;
  std::optional<double> epsilon;
  std::string label;  // Yes / No / Weak for judgment-only cells
  std::string error;
};

struct SummaryRow {
  std::string model;
  std::optional<double> perplexity;
  SummaryCell zipf;
  SummaryCell heaps;
  SummaryCell ebeling;
  SummaryCell taylor;
  SummaryCell lrc;
};

SummaryRow summarize(const ModelReport& report);

// Report as JSON, including the summary cells, diagnostic counts and
// metadata. Point sets are not included (see emit_plot_data).
nlohmann::json report_to_json(const ModelReport& report, const AnalysisConfig& config = {});

// Reads the summary back from report_to_json output. Throws
// Error(kFormatError).
SummaryRow summary_from_json(const nlohmann::json& report);

enum class TableFormat { kTsv, kJson };

struct TableOptions {
  double zeta_threshold = 0.52;
};

// Deterministic rendering with fixed column order and 6 significant digits.
std::string summary_table(std::span<const SummaryRow> rows, TableFormat format,
                          const TableOptions& options = {});
std::string summary_table(std::span<const ModelReport> reports, TableFormat format,
                          const TableOptions& options = {});

// %.6g rendering used by every table and plot file.
std::string format_number(double v);

// Writes "x<TAB>y" records under a one-line "#" header naming the analysis,
// exponent and epsilon. The Zipf overload writes `<stem>_unigram<ext>` and
// `<stem>_bigram<ext>` next to `destination`. Returns the written paths.
// Throws Error(kIoError).
std::vector<std::string> emit_plot_data(const ZipfResult& result, const std::string& destination);
std::vector<std::string> emit_plot_data(const HeapsResult& result, const std::string& destination);
std::vector<std::string> emit_plot_data(const EbelingResult& result, const std::string& destination);
std::vector<std::string> emit_plot_data(const TaylorResult& result, const std::string& destination);
std::vector<std::string> emit_plot_data(const LrcResult& result, const std::string& destination);

}  // namespace scalecheck

#endif  // SCALECHECK_REPORT_H_
