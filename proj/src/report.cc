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

#include "ldpfair/report.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "ldpfair/ingest.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

constexpr std::string_view kRowsHeader =
    "dataset,regime,setting,epsilon,run,fold,group,measure,value";

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string OptionalField(const std::optional<double>& v) {
  return v.has_value() ? FormatDouble(*v) : std::string(kUndefinedToken);
}

absl::StatusOr<double> ParseDouble(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad number '", std::string(s), "'"));
  }
  return v;
}

absl::StatusOr<size_t> ParseCount(std::string_view s) {
  size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad count '", std::string(s), "'"));
  }
  return v;
}

absl::StatusOr<std::optional<double>> ParseOptional(std::string_view s) {
  if (s == kUndefinedToken) return std::optional<double>();
  ASSIGN_OR_RETURN(double v, ParseDouble(s));
  return std::optional<double>(v);
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string SummaryToCsv(std::span<const SummaryRow> summary) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const SummaryRow& s : summary) {
    absl::StrAppend(&out, CsvField(s.dataset), ",", CsvField(s.regime), ",",
                    CsvField(s.setting), ",", FormatDouble(s.epsilon), ",",
                    CsvField(s.group), ",", CsvField(s.measure), ",",
                    OptionalField(s.mean), ",", OptionalField(s.sd), ",",
                    s.n_included, ",", s.n_excluded, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<SummaryRow>> ParseSummaryCsv(std::string_view text) {
  std::vector<SummaryRow> out;
  bool header_seen = false;
  size_t line_no = 0;
  for (absl::string_view row : absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    std::string_view line(row.data(), row.size());
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kSummaryHeader) {
        return absl::InvalidArgumentError("summary CSV header mismatch");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 10) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": expected 10 fields, got ", f.size()));
    }
    SummaryRow s;
    s.dataset = f[0];
    s.regime = f[1];
    s.setting = f[2];
    s.group = f[4];
    s.measure = f[5];
    auto annotate = [&](const absl::Status& st) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": ", st.message()));
    };
    auto eps = ParseDouble(f[3]);
    if (!eps.ok()) return annotate(eps.status());
    s.epsilon = *eps;
    auto mean = ParseOptional(f[6]);
    if (!mean.ok()) return annotate(mean.status());
    s.mean = *mean;
    auto sd = ParseOptional(f[7]);
    if (!sd.ok()) return annotate(sd.status());
    s.sd = *sd;
    auto inc = ParseCount(f[8]);
    if (!inc.ok()) return annotate(inc.status());
    s.n_included = *inc;
    auto exc = ParseCount(f[9]);
    if (!exc.ok()) return annotate(exc.status());
    s.n_excluded = *exc;
    out.push_back(std::move(s));
  }
  if (!header_seen) {
    return absl::InvalidArgumentError("summary CSV has no header");
  }
  return out;
}

nlohmann::json SummaryToJson(std::span<const SummaryRow> summary) {
  auto optional = [](const std::optional<double>& v) {
    return v.has_value() ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const SummaryRow& s : summary) {
    rows.push_back({{"dataset", s.dataset},
                    {"regime", s.regime},
                    {"setting", s.setting},
                    {"epsilon", s.epsilon},
                    {"group", s.group},
                    {"measure", s.measure},
                    {"mean", optional(s.mean)},
                    {"sd", optional(s.sd)},
                    {"n_included", s.n_included},
                    {"n_excluded", s.n_excluded}});
  }
  const std::vector<std::string> columns =
      absl::StrSplit(std::string(kSummaryHeader), ',');
  return {{"columns", columns}, {"rows", rows}};
}

std::string ResultRowsToCsv(std::span<const ResultRow> rows) {
  std::string out = std::string(kRowsHeader) + "\n";
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, CsvField(r.dataset), ",", CsvField(r.regime), ",",
                    std::string(SettingName(r.setting)), ",",
                    FormatDouble(r.epsilon), ",",
                    r.run, ",", r.fold, ",", CsvField(r.group), ",",
                    CsvField(r.measure), ",", OptionalField(r.value), "\n");
  }
  return out;
}

absl::StatusOr<std::filesystem::path> EmitReport(
    std::span<const SummaryRow> summary, const std::filesystem::path& out_dir,
    ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create ", out_dir.string(), ": ", ec.message()));
  }
  std::filesystem::path path;
  std::string contents;
  if (format == ReportFormat::kCsv) {
    path = out_dir / "summary.csv";
    contents = SummaryToCsv(summary);
  } else {
    path = out_dir / "summary.json";
    contents = SummaryToJson(summary).dump(2) + "\n";
  }
  RETURN_IF_ERROR(WriteTextFile(path, contents));
  return path;
}

absl::Status WriteTextFile(const std::filesystem::path& path,
                           std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("cannot open ", path.string(), " for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("failed writing ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ldpfair
