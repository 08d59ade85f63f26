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

#ifndef LDPFAIR_DATASET_H_
#define LDPFAIR_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/schema.h"

namespace ldpfair {

// Columnar table of domain indices. Immutable once built; transformations
// return new datasets sharing the same schema.
class Dataset {
 public:
  Dataset() = default;
  // Columns are stored as given; use Validate() to check them.
  Dataset(std::shared_ptr<const Schema> schema,
          std::vector<std::vector<int>> columns);

  // Builds a dataset from row-major category labels.
  static absl::StatusOr<Dataset> FromLabels(
      std::shared_ptr<const Schema> schema,
      const std::vector<std::vector<std::string>>& rows);

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }

  size_t num_records() const {
    return columns_.empty() ? 0 : columns_.front().size();
  }
  size_t num_columns() const { return columns_.size(); }
  std::span<const int> column(size_t attribute) const {
    return columns_[attribute];
  }
  int at(size_t row, size_t attribute) const {
    return columns_[attribute][row];
  }

  Dataset Subset(std::span<const size_t> rows) const;
  Dataset WithColumn(size_t attribute, std::vector<int> values) const;

  std::vector<std::vector<std::string>> ToLabels() const;

  // FNV-1a over the column contents; equal digests for equal tables.
  uint64_t Digest() const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<std::vector<int>> columns_;
};

// Checks schema and cell invariants. Never fails; an empty result means the
// dataset is well formed.
std::vector<Violation> Validate(const Dataset& dataset);

// Per-record group label: 1 for the privileged group, 0 otherwise. The
// protected attribute must be binary.
absl::StatusOr<std::vector<int>> ProjectGroups(const Dataset& dataset);

}  // namespace ldpfair

#endif  // LDPFAIR_DATASET_H_
