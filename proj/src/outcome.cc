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

#include "ldpfair/outcome.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpfair {

absl::StatusOr<double> ResolveThreshold(std::span<const double> scores,
                                        const ThresholdSpec& spec) {
  if (spec.mode == ThresholdSpec::Mode::kAbsolute) {
    if (!std::isfinite(spec.value)) {
      return absl::InvalidArgumentError("threshold must be finite");
    }
    return spec.value;
  }
  if (!(spec.value > 0.0 && spec.value < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quantile level must lie strictly in (0, 1), got ", spec.value));
  }
  if (scores.empty()) {
    return absl::FailedPreconditionError("quantile of an empty score column");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    return absl::FailedPreconditionError(
        "degenerate threshold: every score is identical");
  }
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<size_t>(std::ceil(spec.value * n));
  rank = std::clamp<size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

absl::StatusOr<Dataset> BinarizeOutcome(const ScoredData& data,
                                        const ThresholdSpec& spec,
                                        const std::string& outcome_name) {
  const Dataset& features = data.features;
  if (data.scores.size() != features.num_records()) {
    return absl::InvalidArgumentError(
        absl::StrCat("score column has ", data.scores.size(),
                     " entries for ", features.num_records(), " records"));
  }
  if (features.schema().Find(outcome_name).has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("attribute '", outcome_name, "' already exists"));
  }
  auto tau = ResolveThreshold(data.scores, spec);
  if (!tau.ok()) return tau.status();

  auto schema = std::make_shared<Schema>(features.schema());
  schema->attributes.push_back({outcome_name, {"0", "1"}, Role::kOutcome});

  std::vector<std::vector<int>> columns;
  columns.reserve(features.num_columns() + 1);
  for (size_t a = 0; a < features.num_columns(); ++a) {
    const auto col = features.column(a);
    columns.emplace_back(col.begin(), col.end());
  }
  std::vector<int> y(data.scores.size());
  for (size_t i = 0; i < y.size(); ++i) y[i] = data.scores[i] > *tau ? 1 : 0;
  columns.push_back(std::move(y));
  return Dataset(std::move(schema), std::move(columns));
}

}  // namespace ldpfair
