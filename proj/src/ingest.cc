// Copyright 2026 The ldpfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpfair/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ldpfair/report.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

size_t BucketOf(double value, const std::vector<double>& edges) {
  // First edge with value <= edge; values above every edge go to the last
  // bucket.
  return static_cast<size_t>(
      std::lower_bound(edges.begin(), edges.end(), value) - edges.begin());
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string> DefaultBinLabels(const std::vector<double>& edges) {
  std::vector<std::string> labels;
  for (size_t i = 0; i <= edges.size(); ++i) {
    const std::string lo = i == 0 ? "-inf" : FormatDouble(edges[i - 1]);
    const std::string hi = i == edges.size() ? "inf" : FormatDouble(edges[i]);
    labels.push_back(absl::StrCat("(", lo, ",", hi, "]"));
  }
  return labels;
}

absl::StatusOr<ThresholdSpec> ThresholdFromJson(const nlohmann::json& doc) {
  if (doc.is_number()) return ThresholdSpec::Absolute(doc.get<double>());
  const std::string mode = doc.value("mode", std::string("absolute"));
  const double value = doc.at("value").get<double>();
  if (mode == "absolute") return ThresholdSpec::Absolute(value);
  if (mode == "quantile") return ThresholdSpec::Quantile(value);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown threshold mode '", mode, "'"));
}

}  // namespace

absl::Status CheckIngestConfig(const IngestConfig& config) {
  if (config.columns.empty()) {
    return absl::InvalidArgumentError("ingest config maps no columns");
  }
  if (config.outcome_column.empty()) {
    return absl::InvalidArgumentError("ingest config has no outcome column");
  }
  std::set<std::string> names;
  for (const auto& c : config.columns) {
    if (c.role == Role::kOutcome) {
      return absl::InvalidArgumentError(
          "the outcome is configured through 'outcome', not as a column");
    }
    if (!names.insert(c.attribute).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", c.attribute, "' mapped twice"));
    }
    if (c.is_binned()) {
      for (size_t i = 1; i < c.edges.size(); ++i) {
        if (!(c.edges[i - 1] < c.edges[i])) {
          return absl::InvalidArgumentError(absl::StrCat(
              "bin edges of '", c.column, "' must be strictly increasing"));
        }
      }
      if (!c.bin_labels.empty() && c.bin_labels.size() != c.edges.size() + 1) {
        return absl::InvalidArgumentError(absl::StrCat(
            "'", c.column, "' needs ", c.edges.size() + 1, " bin labels"));
      }
    } else if (c.categories.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "'", c.column, "' needs either categories or bin edges"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<IngestConfig> IngestConfigFromJson(
    const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  IngestConfig config;
  try {
    config.name = doc.value("name", std::string("dataset"));
    config.path = doc.at("path").get<std::string>();
    if (config.path.is_relative()) config.path = base_dir / config.path;
    config.privileged_index = doc.value("privileged_index", 1);
    if (doc.contains("sensitive_order")) {
      config.sensitive_order =
          doc.at("sensitive_order").get<std::vector<std::string>>();
    }
    for (const auto& item : doc.at("columns")) {
      ColumnSpec spec;
      spec.column = item.at("column").get<std::string>();
      spec.attribute = item.value("attribute", spec.column);
      ASSIGN_OR_RETURN(
          spec.role,
          ParseRole(item.value("role", std::string("non_sensitive"))));
      if (item.contains("categories")) {
        spec.categories = item.at("categories").get<std::vector<std::string>>();
      }
      if (item.contains("merge")) {
        for (const auto& [from, to] : item.at("merge").items()) {
          spec.merges.emplace_back(from, to.get<std::string>());
        }
      }
      if (item.contains("edges")) {
        spec.edges = item.at("edges").get<std::vector<double>>();
      }
      if (item.contains("labels")) {
        spec.bin_labels = item.at("labels").get<std::vector<std::string>>();
      }
      config.columns.push_back(std::move(spec));
    }
    const auto& outcome = doc.at("outcome");
    config.outcome_column = outcome.at("column").get<std::string>();
    config.outcome_attribute = outcome.value("attribute", std::string("Y"));
    if (outcome.contains("threshold")) {
      ASSIGN_OR_RETURN(config.outcome_threshold,
                       ThresholdFromJson(outcome.at("threshold")));
    }
    if (doc.contains("regimes")) {
      for (const auto& item : doc.at("regimes")) {
        Regime regime;
        regime.name = item.at("name").get<std::string>();
        ASSIGN_OR_RETURN(regime.threshold,
                         ThresholdFromJson(item.at("threshold")));
        config.regimes.push_back(std::move(regime));
      }
    }
    if (doc.contains("filters")) {
      for (const auto& item : doc.at("filters")) {
        FilterSpec filter;
        filter.column = item.at("column").get<std::string>();
        const std::string op = item.value("op", std::string("in"));
        if (op == "in" || op == "not_in") {
          filter.op = op == "in" ? FilterSpec::Op::kIn : FilterSpec::Op::kNotIn;
          filter.values = item.at("values").get<std::vector<std::string>>();
        } else if (op == "between") {
          filter.op = FilterSpec::Op::kBetween;
          filter.low = item.at("low").get<double>();
          filter.high = item.at("high").get<double>();
        } else {
          return absl::InvalidArgumentError(
              absl::StrCat("unknown filter op '", op, "'"));
        }
        config.filters.push_back(std::move(filter));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed ingest config: ", e.what()));
  }
  RETURN_IF_ERROR(CheckIngestConfig(config));
  return config;
}

absl::StatusOr<IngestConfig> ReadIngestConfig(
    const std::filesystem::path& file) {
  ASSIGN_OR_RETURN(const std::string text, ReadTextFile(file));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(file.string(), ": ", e.what()));
  }
  return IngestConfigFromJson(doc, file.parent_path());
}

std::string LoadReport::ToText() const {
  std::string out = absl::StrCat(
      "records in: ", records_in, "\nrecords out: ", records_out,
      "\nfiltered: ", filtered, "\nerrored: ", errored, "\n");
  for (const auto& e : errors) {
    absl::StrAppend(&out, "line ", e.line, " [", e.column, "]: ", e.message,
                    "\n");
  }
  return out;
}

nlohmann::json LoadReport::ToJson() const {
  nlohmann::json errs = nlohmann::json::array();
  for (const auto& e : errors) {
    errs.push_back(
        {{"line", e.line}, {"column", e.column}, {"message", e.message}});
  }
  return {{"records_in", records_in},
          {"records_out", records_out},
          {"filtered", filtered},
          {"errored", errored},
          {"errors", errs}};
}

absl::StatusOr<ScoredLoad> LoadScored(const IngestConfig& config) {
  RETURN_IF_ERROR(CheckIngestConfig(config));
  std::ifstream in(config.path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open data file ", config.path.string()));
  }
  std::string line;
  if (!std::getline(in, line)) {
    return absl::FailedPreconditionError(
        absl::StrCat(config.path.string(), " is empty"));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::map<std::string, size_t, std::less<>> header;
  {
    const auto names = SplitCsvLine(line);
    for (size_t i = 0; i < names.size(); ++i) {
      header.emplace(std::string(Trim(names[i])), i);
    }
  }
  auto column_of = [&](const std::string& name) -> absl::StatusOr<size_t> {
    const auto it = header.find(name);
    if (it == header.end()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "column '", name, "' missing from the header of ",
          config.path.string()));
    }
    return it->second;
  };

  auto schema = std::make_shared<Schema>();
  schema->privileged_index = config.privileged_index;
  schema->sensitive_order = config.sensitive_order;
  std::vector<size_t> source;
  for (const auto& c : config.columns) {
    ASSIGN_OR_RETURN(const size_t idx, column_of(c.column));
    source.push_back(idx);
    AttributeSpec spec{c.attribute, c.categories, c.role};
    if (c.is_binned()) {
      spec.domain =
          c.bin_labels.empty() ? DefaultBinLabels(c.edges) : c.bin_labels;
    }
    schema->attributes.push_back(std::move(spec));
  }
  ASSIGN_OR_RETURN(const size_t outcome_idx, column_of(config.outcome_column));
  std::vector<size_t> filter_cols;
  for (const auto& f : config.filters) {
    ASSIGN_OR_RETURN(const size_t idx, column_of(f.column));
    filter_cols.push_back(idx);
  }

  std::vector<std::map<std::string, std::string, std::less<>>> merges;
  for (const auto& c : config.columns) {
    merges.emplace_back(c.merges.begin(), c.merges.end());
  }

  ScoredLoad result;
  LoadReport& report = result.report;
  std::vector<std::vector<int>> columns(config.columns.size());
  std::vector<double> scores;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    ++report.records_in;
    const auto fields = SplitCsvLine(line);
    auto fail = [&](std::string column, std::string message) {
      ++report.errored;
      if (report.errors.size() < LoadReport::kMaxErrors) {
        report.errors.push_back(
            {line_no, std::move(column), std::move(message)});
      }
    };
    if (fields.size() != header.size()) {
      fail("", absl::StrCat("expected ", header.size(), " fields, found ",
                            fields.size()));
      continue;
    }
    auto cell = [&](size_t idx) {
      return Trim(fields[idx]);
    };

    bool keep = true;
    bool bad = false;
    for (size_t f = 0; f < config.filters.size() && keep && !bad; ++f) {
      const FilterSpec& filter = config.filters[f];
      const std::string_view raw = cell(filter_cols[f]);
      switch (filter.op) {
        case FilterSpec::Op::kIn:
        case FilterSpec::Op::kNotIn: {
          const bool listed = std::find(filter.values.begin(),
                                        filter.values.end(),
                                        raw) != filter.values.end();
          keep = (filter.op == FilterSpec::Op::kIn) == listed;
          break;
        }
        case FilterSpec::Op::kBetween: {
          const auto v = ParseNumber(raw);
          if (!v.has_value()) {
            fail(filter.column, absl::StrCat("malformed number '", std::string(raw), "'"));
            bad = true;
          } else {
            keep = *v >= filter.low && *v <= filter.high;
          }
          break;
        }
      }
    }
    if (bad) continue;
    if (!keep) {
      ++report.filtered;
      continue;
    }

    std::vector<int> values(config.columns.size());
    for (size_t c = 0; c < config.columns.size() && !bad; ++c) {
      const ColumnSpec& spec = config.columns[c];
      std::string_view raw = cell(source[c]);
      if (spec.is_binned()) {
        const auto v = ParseNumber(raw);
        if (!v.has_value()) {
          fail(spec.column, absl::StrCat("malformed number '", std::string(raw), "'"));
          bad = true;
        } else {
          values[c] = static_cast<int>(BucketOf(*v, spec.edges));
        }
        continue;
      }
      if (const auto it = merges[c].find(raw); it != merges[c].end()) {
        raw = it->second;
      }
      const auto pos =
          std::find(spec.categories.begin(), spec.categories.end(), raw);
      if (pos == spec.categories.end()) {
        fail(spec.column, absl::StrCat("unknown category '", std::string(raw), "'"));
        bad = true;
      } else {
        values[c] = static_cast<int>(pos - spec.categories.begin());
      }
    }
    if (bad) continue;
    const std::string_view raw_score = cell(outcome_idx);
    const auto score = ParseNumber(raw_score);
    if (!score.has_value()) {
      fail(config.outcome_column,
           absl::StrCat("malformed number '", std::string(raw_score), "'"));
      continue;
    }
    for (size_t c = 0; c < values.size(); ++c) columns[c].push_back(values[c]);
    scores.push_back(*score);
    ++report.records_out;
  }

  result.data.features = Dataset(std::move(schema), std::move(columns));
  result.data.scores = std::move(scores);
  return result;
}

absl::StatusOr<LoadResult> LoadDataset(const IngestConfig& config) {
  ASSIGN_OR_RETURN(ScoredLoad scored, LoadScored(config));
  ASSIGN_OR_RETURN(Dataset dataset,
                   BinarizeOutcome(scored.data, config.outcome_threshold,
                                   config.outcome_attribute));
  return LoadResult{std::move(dataset), std::move(scored.report)};
}

}  // namespace ldpfair
