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

#include "scalecheck/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "scalecheck/error.h"
#include "scalecheck/rng.h"

namespace scalecheck {

namespace {

using nlohmann::json;

template <typename Result, typename Fn>
Cell<Result> run_cell(Fn fn) {
  Cell<Result> cell;
  try {
    cell.result = fn();
    cell.status = CellStatus::kOk;
  } catch (const Error& e) {
    cell.status = e.code() == ErrorCode::kNotApplicable ? CellStatus::kNotApplicable
                                                        : CellStatus::kFailed;
    cell.error = std::string(error_code_name(e.code()));
    cell.message = e.what();
  } catch (const std::exception& e) {
    cell.status = CellStatus::kFailed;
    cell.error = "InternalError";
    cell.message = e.what();
  }
  return cell;
}

template <typename Result>
SummaryCell base_cell(const Cell<Result>& cell) {
  SummaryCell out;
  out.status = cell.status;
  out.error = cell.error;
  return out;
}

template <typename Result>
SummaryCell exponent_cell(const Cell<Result>& cell) {
  SummaryCell out = base_cell(cell);
  if (cell.status == CellStatus::kOk) {
    out.exponent = cell.result->fit.exponent;
    out.epsilon = cell.result->fit.epsilon;
  }
  return out;
}

// Round-trips through the printed form so JSON and TSV carry the same value.
double rounded(double v) { return std::stod(format_number(v)); }

json optional_number(const std::optional<double>& v) {
  return v ? json(rounded(*v)) : json(nullptr);
}

json cell_json(const SummaryCell& cell) {
  json j;
  j["status"] = cell_status_name(cell.status);
  if (!cell.error.empty()) j["error"] = cell.error;
  if (cell.exponent) j["exponent"] = rounded(*cell.exponent);
  if (cell.epsilon) j["epsilon"] = rounded(*cell.epsilon);
  if (!cell.label.empty()) j["label"] = cell.label;
  return j;
}

SummaryCell cell_from_json(const json& j) {
  SummaryCell cell;
  const auto status = j.at("status").get<std::string>();
  if (status == "ok") {
    cell.status = CellStatus::kOk;
  } else if (status == "not_applicable") {
    cell.status = CellStatus::kNotApplicable;
  } else if (status == "failed") {
    cell.status = CellStatus::kFailed;
  } else {
    throw Error(ErrorCode::kFormatError, "report: unknown cell status '" + status + "'");
  }
  if (j.contains("error")) cell.error = j["error"].get<std::string>();
  if (j.contains("exponent")) cell.exponent = j["exponent"].get<double>();
  if (j.contains("epsilon")) cell.epsilon = j["epsilon"].get<double>();
  if (j.contains("label")) cell.label = j["label"].get<std::string>();
  return cell;
}

std::string render_cell(const SummaryCell& cell) {
  switch (cell.status) {
    case CellStatus::kNotApplicable: return "-";
    case CellStatus::kFailed: return "ERR:" + (cell.error.empty() ? std::string("unknown") : cell.error);
    case CellStatus::kOk: break;
  }
  if (!cell.label.empty()) return cell.label;
  std::string s = cell.exponent ? format_number(*cell.exponent) : "?";
  if (cell.epsilon) s += " (" + format_number(*cell.epsilon) + ")";
  return s;
}

bool taylor_marked(const SummaryCell& taylor, const TableOptions& options) {
  return taylor.status == CellStatus::kOk && taylor.exponent &&
         *taylor.exponent >= options.zeta_threshold;
}

void write_points(const std::string& path, const std::string& header,
                  const LogLogPoints& points) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << "# " << header << '\n';
  for (const auto& p : points) out << format_number(p.z) << '\t' << format_number(p.y) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

std::string fit_header(std::string_view analysis, const PowerLawFit& fit, std::string_view axes) {
  std::string h(analysis);
  h += " exponent=" + format_number(fit.exponent);
  h += " epsilon=" + format_number(fit.epsilon);
  h += " n_points=" + std::to_string(fit.n_points);
  h += " log_base=" + format_number(fit.log_base);
  h += " columns=";
  h += axes;
  return h;
}

}  // namespace

std::string_view cell_status_name(CellStatus status) {
  switch (status) {
    case CellStatus::kOk: return "ok";
    case CellStatus::kNotApplicable: return "not_applicable";
    case CellStatus::kFailed: return "failed";
  }
  return "failed";
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json config_to_json(const AnalysisConfig& config) {
  const auto& s = config.scaling;
  return json{
      {"log_base", s.log_base},
      {"zipf_fit_max_rank", s.zipf_fit_max_rank},
      {"zipf_max_epsilon", s.zipf_max_epsilon},
      {"heaps_points", s.heaps_points},
      {"ebeling_grid_points", s.ebeling_grid_points},
      {"ebeling_min_l", s.ebeling_min_l},
      {"ebeling_min_segments", s.ebeling_min_segments},
      {"taylor_l", s.taylor_l},
      {"lrc_q", s.lrc_q},
      {"lrc_max_lag", s.lrc_max_lag},
      {"lrc_min_intervals", s.lrc_min_intervals},
      {"lrc_series", "return-interval"},
      {"eta_threshold", config.eta_threshold},
      {"zeta_threshold", config.zeta_threshold},
  };
}

bool ModelReport::any_failed() const {
  return zipf.status == CellStatus::kFailed || heaps.status == CellStatus::kFailed ||
         ebeling.status == CellStatus::kFailed || taylor.status == CellStatus::kFailed ||
         lrc.status == CellStatus::kFailed;
}

bool ModelReport::all_failed() const {
  return zipf.status != CellStatus::kOk && heaps.status != CellStatus::kOk &&
         ebeling.status != CellStatus::kOk && taylor.status != CellStatus::kOk &&
         lrc.status != CellStatus::kOk;
}

ModelReport analyze_all(const TokenSequence& words, const TokenSequence* chars,
                        const AnalysisConfig& config, std::string model_name) {
  ModelReport report;
  report.model_name = std::move(model_name);
  report.metadata.token_count = words.size();
  report.metadata.vocab_size = words.vocab_size();
  report.metadata.char_count = chars ? chars->size() : 0;
  report.metadata.config = config_to_json(config);
  const auto& sc = config.scaling;

  auto zipf = std::async(std::launch::async, [&] {
    return run_cell<ZipfResult>([&] { return zipf_analysis(words, sc); });
  });
  auto heaps = std::async(std::launch::async, [&] {
    return run_cell<HeapsResult>([&] { return heaps_analysis(words, sc); });
  });
  auto ebeling = std::async(std::launch::async, [&] {
    return run_cell<EbelingResult>([&]() -> EbelingResult {
      if (chars == nullptr) {
        throw Error(ErrorCode::kNotApplicable, "ebeling: no character stream");
      }
      return ebeling_analysis(*chars, sc);
    });
  });
  auto taylor = std::async(std::launch::async, [&] {
    return run_cell<TaylorResult>([&] { return taylor_analysis(words, sc.taylor_l, sc); });
  });
  auto lrc = std::async(std::launch::async, [&] {
    return run_cell<LrcResult>([&] {
      if (words.empty()) throw Error(ErrorCode::kEmptyInput, "lrc: empty sequence");
      return lrc_analysis(words, sc.lrc_q, sc);
    });
  });
  report.zipf = zipf.get();
  report.heaps = heaps.get();
  report.ebeling = ebeling.get();
  report.taylor = taylor.get();
  report.lrc = lrc.get();
  return report;
}

SummaryRow summarize(const ModelReport& report) {
  SummaryRow row;
  row.model = report.model_name;
  row.perplexity = report.perplexity;

  row.zipf = base_cell(report.zipf);
  if (report.zipf.status == CellStatus::kOk) {
    row.zipf.label = report.zipf.result->holds ? "Yes" : "No";
  }
  row.heaps = exponent_cell(report.heaps);
  row.ebeling = exponent_cell(report.ebeling);
  row.taylor = exponent_cell(report.taylor);

  row.lrc = base_cell(report.lrc);
  if (report.lrc.status == CellStatus::kOk) {
    const auto& lrc = *report.lrc.result;
    if (lrc.classification == Correlation::kCorrelated) {
      row.lrc.exponent = lrc.xi();
      row.lrc.epsilon = lrc.fit->epsilon;
    } else {
      row.lrc.label = std::string(correlation_name(lrc.classification));
    }
  }
  return row;
}

json report_to_json(const ModelReport& report, const AnalysisConfig& config) {
  const SummaryRow row = summarize(report);
  json j;
  j["format"] = "scalecheck-report";
  j["format_version"] = kReportFormatVersion;
  j["model"] = report.model_name;
  j["perplexity"] = optional_number(report.perplexity);

  auto with_message = [](json cell, const auto& source) {
    if (!source.message.empty()) cell["message"] = source.message;
    return cell;
  };

  json zipf = with_message(cell_json(row.zipf), report.zipf);
  if (report.zipf.result) {
    const auto& z = *report.zipf.result;
    zipf["holds"] = z.holds;
    zipf["unigram_types"] = z.unigram_points.size();
    zipf["bigram_types"] = z.bigram_points.size();
    if (z.alpha_fit) {
      zipf["alpha"] = rounded(z.alpha());
      zipf["alpha_epsilon"] = rounded(z.alpha_fit->epsilon);
    }
  }
  j["zipf"] = zipf;

  json heaps = with_message(cell_json(row.heaps), report.heaps);
  if (report.heaps.result) heaps["n_points"] = report.heaps.result->fit.n_points;
  j["heaps"] = heaps;

  json ebeling = with_message(cell_json(row.ebeling), report.ebeling);
  if (report.ebeling.result) {
    ebeling["n_points"] = report.ebeling.result->fit.n_points;
    ebeling["long_memory"] = report.ebeling.result->fit.exponent >= config.eta_threshold;
  }
  j["ebeling"] = ebeling;

  json taylor = with_message(cell_json(row.taylor), report.taylor);
  if (report.taylor.result) {
    const auto& t = *report.taylor.result;
    taylor["segment_size"] = t.segment_size;
    taylor["segments"] = t.segments;
    taylor["n_points"] = t.fit.n_points;
    taylor["excluded_zero_sigma"] = t.excluded_zero_sigma;
    taylor["long_memory"] = t.fit.exponent >= config.zeta_threshold;
  }
  j["taylor"] = taylor;

  json lrc = with_message(cell_json(row.lrc), report.lrc);
  if (report.lrc.result) {
    const auto& l = *report.lrc.result;
    lrc["classification"] = correlation_name(l.classification);
    lrc["q"] = l.q;
    lrc["rare_types"] = l.rare_types;
    lrc["intervals"] = l.interval_series.size();
    lrc["max_lag"] = l.acf.size();
    lrc["series"] = "return-interval";
  }
  j["lrc"] = lrc;

  const auto& m = report.metadata;
  json meta;
  meta["input"] = m.input_path;
  meta["char_input"] = m.char_input_path;
  meta["tokens"] = m.token_count;
  meta["vocabulary"] = m.vocab_size;
  meta["characters"] = m.char_count;
  meta["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  meta["rng"] = m.rng.empty() ? std::string(SeededRng::kAlgorithm) : m.rng;
  meta["log_base"] = config.scaling.log_base;
  meta["config"] = m.config.is_null() ? config_to_json(config) : m.config;
  j["metadata"] = meta;
  return j;
}

SummaryRow summary_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "scalecheck-report") {
      throw Error(ErrorCode::kFormatError, "report: not a scalecheck report");
    }
    if (j.at("format_version").get<int>() != kReportFormatVersion) {
      throw Error(ErrorCode::kFormatError, "report: unsupported format version");
    }
    SummaryRow row;
    row.model = j.at("model").get<std::string>();
    if (!j.at("perplexity").is_null()) row.perplexity = j["perplexity"].get<double>();
    row.zipf = cell_from_json(j.at("zipf"));
    row.heaps = cell_from_json(j.at("heaps"));
    row.ebeling = cell_from_json(j.at("ebeling"));
    row.taylor = cell_from_json(j.at("taylor"));
    row.lrc = cell_from_json(j.at("lrc"));
    return row;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("report: ") + e.what());
  }
}

std::string summary_table(std::span<const SummaryRow> rows, TableFormat format,
                          const TableOptions& options) {
  if (format == TableFormat::kTsv) {
    std::ostringstream out;
    out << "model\tperplexity\tzipf\theaps\tebeling\ttaylor\ttaylor_bold\tlrc\n";
    for (const auto& r : rows) {
      out << r.model << '\t' << (r.perplexity ? format_number(*r.perplexity) : "-") << '\t'
          << render_cell(r.zipf) << '\t' << render_cell(r.heaps) << '\t'
          << render_cell(r.ebeling) << '\t' << render_cell(r.taylor) << '\t'
          << (taylor_marked(r.taylor, options) ? "*" : "") << '\t' << render_cell(r.lrc)
          << '\n';
    }
    return out.str();
  }
  json table;
  table["format"] = "scalecheck-summary";
  table["format_version"] = kReportFormatVersion;
  table["columns"] = {"model", "perplexity", "zipf", "heaps", "ebeling", "taylor", "taylor_bold", "lrc"};
  table["rows"] = json::array();
  for (const auto& r : rows) {
    json row;
    row["model"] = r.model;
    row["perplexity"] = optional_number(r.perplexity);
    row["zipf"] = cell_json(r.zipf);
    row["heaps"] = cell_json(r.heaps);
    row["ebeling"] = cell_json(r.ebeling);
    row["taylor"] = cell_json(r.taylor);
    row["taylor_bold"] = taylor_marked(r.taylor, options);
    row["lrc"] = cell_json(r.lrc);
    table["rows"].push_back(std::move(row));
  }
  return table.dump(2) + "\n";
}

std::string summary_table(std::span<const ModelReport> reports, TableFormat format,
                          const TableOptions& options) {
  std::vector<SummaryRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(summarize(r));
  return summary_table(rows, format, options);
}

std::vector<std::string> emit_plot_data(const ZipfResult& result, const std::string& destination) {
  const std::filesystem::path dest(destination);
  const auto stem = dest.parent_path() / dest.stem();
  const std::string ext = dest.extension().string();
  const std::string unigram = stem.string() + "_unigram" + ext;
  const std::string bigram = stem.string() + "_bigram" + ext;
  std::string header = "zipf unigram";
  if (result.alpha_fit) {
    header += " alpha=" + format_number(result.alpha()) +
              " epsilon=" + format_number(result.alpha_fit->epsilon) +
              " log_base=" + format_number(result.alpha_fit->log_base);
  }
  header += std::string(" holds=") + (result.holds ? "yes" : "no") + " columns=rank,frequency";
  write_points(unigram, header, result.unigram_points);
  write_points(bigram, "zipf bigram columns=rank,frequency", result.bigram_points);
  return {unigram, bigram};
}

std::vector<std::string> emit_plot_data(const HeapsResult& result, const std::string& destination) {
  write_points(destination, fit_header("heaps", result.fit, "n,v(n)"), result.points);
  return {destination};
}

std::vector<std::string> emit_plot_data(const EbelingResult& result, const std::string& destination) {
  write_points(destination, fit_header("ebeling", result.fit, "l,m(l)"), result.points);
  return {destination};
}

std::vector<std::string> emit_plot_data(const TaylorResult& result, const std::string& destination) {
  write_points(destination,
               fit_header("taylor", result.fit, "mu,sigma") +
                   " segment_size=" + std::to_string(result.segment_size) +
                   " excluded_zero_sigma=" + std::to_string(result.excluded_zero_sigma),
               result.points);
  return {destination};
}

std::vector<std::string> emit_plot_data(const LrcResult& result, const std::string& destination) {
  LogLogPoints acf;
  acf.reserve(result.acf.size());
  for (const auto& p : result.acf) acf.push_back({static_cast<double>(p.lag), p.value});
  std::string header = "lrc classification=" + std::string(correlation_name(result.classification));
  if (result.fit) {
    header += " xi=" + format_number(result.xi()) + " epsilon=" + format_number(result.fit->epsilon) +
              " log_base=" + format_number(result.fit->log_base);
  }
  header += " q=" + std::to_string(result.q) + " series=return-interval columns=s,c(s)";
  write_points(destination, header, acf);
  return {destination};
}

}  // namespace scalecheck
