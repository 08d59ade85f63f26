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

#ifndef LDPFAIR_OUTCOME_H_
#define LDPFAIR_OUTCOME_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"

namespace ldpfair {

// How a continuous score is cut into a binary outcome: Y = 1 iff
// score > tau.
struct ThresholdSpec {
  enum class Mode { kAbsolute, kQuantile };

  Mode mode = Mode::kQuantile;
  // tau itself (absolute) or a level in (0, 1) (quantile).
  double value = 0.5;

  static ThresholdSpec Absolute(double tau) { return {Mode::kAbsolute, tau}; }
  static ThresholdSpec Quantile(double level) {
    return {Mode::kQuantile, level};
  }
};

// A named outcome distribution, e.g. Q1 (skewed to 1), Q2 (balanced),
// Q3 (skewed to 0).
struct Regime {
  std::string name;
  ThresholdSpec threshold;
};

// Feature table plus a continuous score per record; the outcome column is
// added by BinarizeOutcome.
struct ScoredData {
  Dataset features;
  std::vector<double> scores;
};

// Lower empirical quantile: the smallest observed score s such that at
// least ceil(level * n) scores are <= s. Absolute specs are returned as is.
absl::StatusOr<double> ResolveThreshold(std::span<const double> scores,
                                        const ThresholdSpec& spec);

// Appends an outcome attribute `outcome_name` with domain {"0", "1"}.
// Quantile mode fails on constant scores (no threshold separates them).
absl::StatusOr<Dataset> BinarizeOutcome(const ScoredData& data,
                                        const ThresholdSpec& spec,
                                        const std::string& outcome_name = "Y");

}  // namespace ldpfair

#endif  // LDPFAIR_OUTCOME_H_
