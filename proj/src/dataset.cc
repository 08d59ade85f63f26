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

#include "ldpfair/dataset.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpfair {

Dataset::Dataset(std::shared_ptr<const Schema> schema,
                 std::vector<std::vector<int>> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

absl::StatusOr<Dataset> Dataset::FromLabels(
    std::shared_ptr<const Schema> schema,
    const std::vector<std::vector<std::string>>& rows) {
  const size_t width = schema->attributes.size();
  std::vector<std::vector<int>> columns(width);
  for (auto& c : columns) c.reserve(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", rows[r].size(), " cells, expected ",
                       width));
    }
    for (size_t a = 0; a < width; ++a) {
      auto idx = schema->EncodeLabel(a, rows[r][a]);
      if (!idx.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", r, ": ", idx.status().message()));
      }
      columns[a].push_back(*idx);
    }
  }
  return Dataset(std::move(schema), std::move(columns));
}

Dataset Dataset::Subset(std::span<const size_t> rows) const {
  std::vector<std::vector<int>> columns(columns_.size());
  for (size_t a = 0; a < columns_.size(); ++a) {
    columns[a].reserve(rows.size());
    for (size_t r : rows) columns[a].push_back(columns_[a][r]);
  }
  return Dataset(schema_, std::move(columns));
}

Dataset Dataset::WithColumn(size_t attribute, std::vector<int> values) const {
  std::vector<std::vector<int>> columns = columns_;
  columns[attribute] = std::move(values);
  return Dataset(schema_, std::move(columns));
}

std::vector<std::vector<std::string>> Dataset::ToLabels() const {
  std::vector<std::vector<std::string>> rows(num_records());
  for (size_t r = 0; r < rows.size(); ++r) {
    rows[r].reserve(columns_.size());
    for (size_t a = 0; a < columns_.size(); ++a) {
      rows[r].push_back(schema_->attributes[a].domain[columns_[a][r]]);
    }
  }
  return rows;
}

uint64_t Dataset::Digest() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(columns_.size());
  for (const auto& c : columns_) {
    mix(c.size());
    for (int v : c) mix(static_cast<uint32_t>(v));
  }
  return h;
}

std::vector<Violation> Validate(const Dataset& dataset) {
  if (dataset.schema_ptr() == nullptr) {
    return {{"schema", "", std::nullopt, "dataset has no schema"}};
  }
  const Schema& schema = dataset.schema();
  std::vector<Violation> out = ValidateSchema(schema);
  if (dataset.num_columns() != schema.attributes.size()) {
    out.push_back({"column-count", "", std::nullopt,
                   absl::StrCat("dataset has ", dataset.num_columns(),
                                " columns, schema has ",
                                schema.attributes.size(), " attributes")});
  }
  const size_t n = dataset.num_records();
  const size_t width =
      std::min(dataset.num_columns(), schema.attributes.size());
  for (size_t a = 0; a < width; ++a) {
    const auto& spec = schema.attributes[a];
    const auto col = dataset.column(a);
    if (col.size() != n) {
      out.push_back({"column-length", spec.name, std::nullopt,
                     absl::StrCat("column has ", col.size(),
                                  " entries, expected ", n)});
    }
    for (size_t r = 0; r < col.size(); ++r) {
      if (col[r] < 0 || col[r] >= spec.domain_size()) {
        out.push_back({"out-of-domain", spec.name, r,
                       absl::StrCat("index ", col[r], " outside [0, ",
                                    spec.domain_size(), ")")});
      }
    }
  }
  return out;
}

absl::StatusOr<std::vector<int>> ProjectGroups(const Dataset& dataset) {
  const Schema& schema = dataset.schema();
  auto idx = schema.ProtectedIndex();
  if (!idx.ok()) return idx.status();
  const auto& spec = schema.attributes[*idx];
  if (spec.domain_size() != 2) {
    return absl::FailedPreconditionError(absl::StrCat(
        "protected attribute '", spec.name, "' must be binary, has ",
        spec.domain_size(), " categories"));
  }
  if (schema.privileged_index != 0 && schema.privileged_index != 1) {
    return absl::FailedPreconditionError("privileged_index must be 0 or 1");
  }
  const auto col = dataset.column(*idx);
  std::vector<int> groups(col.size());
  for (size_t r = 0; r < col.size(); ++r) {
    groups[r] = col[r] == schema.privileged_index ? 1 : 0;
  }
  return groups;
}

}  // namespace ldpfair
