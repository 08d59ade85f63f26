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

#ifndef LDPFAIR_FAIRNESS_H_
#define LDPFAIR_FAIRNESS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "absl/status/statusor.h"

namespace ldpfair {

// Exact ratio num / den. A zero denominator is the UNDEFINED marker.
struct Fraction {
  int64_t num = 0;
  int64_t den = 0;

  bool defined() const { return den != 0; }
  std::optional<double> value() const {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static Fraction Undefined() { return {0, 0}; }
};

// Reduced form with a positive denominator; undefined stays undefined.
Fraction Reduce(Fraction f);
// a - b, undefined if either operand is.
Fraction Subtract(Fraction a, Fraction b);
bool operator==(Fraction a, Fraction b);  // value equality

struct ConfusionCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t tn = 0;
  int64_t fn = 0;

  int64_t n() const { return tp + fp + tn + fn; }
};

struct GroupRates {
  ConfusionCounts counts;
  Fraction selection_rate;  // P(Yhat = 1)
  Fraction tpr;             // TP / (TP + FN)
  Fraction fpr;             // FP / (FP + TN)
  Fraction accuracy;        // P(Yhat = Y)
  Fraction ppv;             // TP / (TP + FP)

  int64_t n() const { return counts.n(); }
  static GroupRates FromCounts(const ConfusionCounts& counts);
};

enum class RateMeasure { kSelectionRate, kTpr, kFpr, kAccuracy, kPpv };
inline constexpr RateMeasure kAllRateMeasures[] = {
    RateMeasure::kSelectionRate, RateMeasure::kTpr, RateMeasure::kFpr,
    RateMeasure::kAccuracy, RateMeasure::kPpv};
std::string_view RateMeasureName(RateMeasure measure);
Fraction RateOf(const GroupRates& rates, RateMeasure measure);

// Statistical, equal opportunity, predictive equality, overall accuracy and
// predictive rate disparity. Each compares one rate across groups.
enum class Metric { kSD, kEOD, kPED, kOAD, kPRD };
inline constexpr Metric kAllMetrics[] = {Metric::kSD, Metric::kEOD,
                                         Metric::kPED, Metric::kOAD,
                                         Metric::kPRD};
std::string_view MetricName(Metric metric);
RateMeasure MetricRate(Metric metric);

// Signed privileged-minus-unprivileged differences.
struct DisparityReport {
  std::array<Fraction, 5> values;

  const Fraction& operator[](Metric m) const {
    return values[static_cast<size_t>(m)];
  }
};

struct GroupedRates {
  GroupRates privileged;
  GroupRates unprivileged;
  GroupRates overall;
};

// Exact confusion counting per group (1 = privileged, 0 = unprivileged).
// All inputs must have equal length and binary entries.
absl::StatusOr<GroupedRates> ComputeGroupRates(std::span<const int> y_true,
                                               std::span<const int> y_pred,
                                               std::span<const int> groups);

// Both groups must be non-empty. A metric whose rate is undefined in either
// group is undefined.
absl::StatusOr<DisparityReport> Disparity(const GroupRates& privileged,
                                          const GroupRates& unprivileged);

}  // namespace ldpfair

#endif  // LDPFAIR_FAIRNESS_H_
