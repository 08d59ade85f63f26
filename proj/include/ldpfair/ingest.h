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

#ifndef LDPFAIR_INGEST_H_
#define LDPFAIR_INGEST_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"
#include "ldpfair/outcome.h"
#include "ldpfair/schema.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Maps one CSV column onto one schema attribute.
struct ColumnSpec {
  std::string column;     // CSV header name
  std::string attribute;  // attribute name in the schema
  Role role = Role::kNonSensitive;
  // Categorical columns: allow-list of raw values, in domain order.
  std::vector<std::string> categories{};
  // Raw value -> category merges applied before the allow-list check.
  std::vector<std::pair<std::string, std::string>> merges{};
  // Numeric columns: strictly increasing edges. Bucket i holds values v
  // with edges[i-1] < v <= edges[i]; edges.size() + 1 buckets in total.
  std::vector<double> edges{};
  // Optional bucket labels; defaults to "(lo,hi]" style labels.
  std::vector<std::string> bin_labels{};

  bool is_binned() const { return !edges.empty(); }
};

// Row filter. Rows failing any filter are dropped before conversion.
struct FilterSpec {
  enum class Op { kIn, kNotIn, kBetween };

  std::string column;
  Op op = Op::kIn;
  std::vector<std::string> values{};  // kIn / kNotIn
  double low = 0.0;                 // kBetween, inclusive
  double high = 0.0;
};

struct IngestConfig {
  std::string name;
  std::filesystem::path path;
  std::vector<ColumnSpec> columns;
  // Numeric score column binarized into the outcome.
  std::string outcome_column;
  std::string outcome_attribute = "Y";
  ThresholdSpec outcome_threshold = ThresholdSpec::Absolute(0.0);
  // Named thresholds for experiment sweeps; may be empty.
  std::vector<Regime> regimes;
  std::vector<FilterSpec> filters;
  std::vector<std::string> sensitive_order;
  int privileged_index = 1;
};

absl::Status CheckIngestConfig(const IngestConfig& config);

// Relative data paths are resolved against `base_dir`.
absl::StatusOr<IngestConfig> IngestConfigFromJson(
    const nlohmann::json& doc, const std::filesystem::path& base_dir);
absl::StatusOr<IngestConfig> ReadIngestConfig(
    const std::filesystem::path& file);

struct RowError {
  size_t line = 0;  // 1-based line in the file, header is line 1
  std::string column;
  std::string message;
};

struct LoadReport {
  static constexpr size_t kMaxErrors = 100;

  size_t records_in = 0;
  size_t records_out = 0;
  size_t filtered = 0;
  size_t errored = 0;
  // The first kMaxErrors row errors.
  std::vector<RowError> errors;

  std::string ToText() const;
  nlohmann::json ToJson() const;
};

struct ScoredLoad {
  ScoredData data;
  LoadReport report;
};

struct LoadResult {
  Dataset dataset;
  LoadReport report;
};

// Reads the CSV, applies filters, bins and maps categories, and keeps the
// outcome column as a raw score. A missing file or header mismatch is
// fatal; bad cells are reported per row and the row is skipped.
absl::StatusOr<ScoredLoad> LoadScored(const IngestConfig& config);

// LoadScored followed by BinarizeOutcome with config.outcome_threshold.
absl::StatusOr<LoadResult> LoadDataset(const IngestConfig& config);

// Splits one CSV record (RFC 4180 quoting).
std::vector<std::string> SplitCsvLine(std::string_view line);

// Bucket index of `value` under left-open, right-closed binning.
size_t BucketOf(double value, const std::vector<double>& edges);

}  // namespace ldpfair

#endif  // LDPFAIR_INGEST_H_
