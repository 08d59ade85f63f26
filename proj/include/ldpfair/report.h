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

#ifndef LDPFAIR_REPORT_H_
#define LDPFAIR_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/experiment.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Column order of the summary CSV.
inline constexpr std::string_view kSummaryHeader =
    "dataset,regime,setting,epsilon,group,measure,mean,sd,n_included,"
    "n_excluded";
inline constexpr std::string_view kUndefinedToken = "UNDEFINED";

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

std::string SummaryToCsv(std::span<const SummaryRow> summary);
absl::StatusOr<std::vector<SummaryRow>> ParseSummaryCsv(std::string_view text);

// Same records as the CSV; UNDEFINED becomes null.
nlohmann::json SummaryToJson(std::span<const SummaryRow> summary);

std::string ResultRowsToCsv(std::span<const ResultRow> rows);

// Writes summary.csv or summary.json under `out_dir`, creating it if
// needed. Returns the written path.
absl::StatusOr<std::filesystem::path> EmitReport(
    std::span<const SummaryRow> summary, const std::filesystem::path& out_dir,
    ReportFormat format);

absl::Status WriteTextFile(const std::filesystem::path& path,
                           std::string_view contents);
absl::StatusOr<std::string> ReadTextFile(const std::filesystem::path& path);

}  // namespace ldpfair

#endif  // LDPFAIR_REPORT_H_
