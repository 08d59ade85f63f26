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

#include "ldpfair/fairness.h"

#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpfair {

Fraction Reduce(Fraction f) {
  if (f.den == 0) return Fraction::Undefined();
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  const int64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

Fraction Subtract(Fraction a, Fraction b) {
  if (!a.defined() || !b.defined()) return Fraction::Undefined();
  return Reduce({a.num * b.den - b.num * a.den, a.den * b.den});
}

bool operator==(Fraction a, Fraction b) {
  if (!a.defined() || !b.defined()) return a.defined() == b.defined();
  const Fraction x = Reduce(a);
  const Fraction y = Reduce(b);
  return x.num == y.num && x.den == y.den;
}

GroupRates GroupRates::FromCounts(const ConfusionCounts& c) {
  GroupRates r;
  r.counts = c;
  r.selection_rate = Reduce({c.tp + c.fp, c.n()});
  r.tpr = Reduce({c.tp, c.tp + c.fn});
  r.fpr = Reduce({c.fp, c.fp + c.tn});
  r.accuracy = Reduce({c.tp + c.tn, c.n()});
  r.ppv = Reduce({c.tp, c.tp + c.fp});
  return r;
}

std::string_view RateMeasureName(RateMeasure measure) {
  switch (measure) {
    case RateMeasure::kSelectionRate:
      return "selection_rate";
    case RateMeasure::kTpr:
      return "tpr";
    case RateMeasure::kFpr:
      return "fpr";
    case RateMeasure::kAccuracy:
      return "accuracy";
    case RateMeasure::kPpv:
      return "ppv";
  }
  return "unknown";
}

Fraction RateOf(const GroupRates& rates, RateMeasure measure) {
  switch (measure) {
    case RateMeasure::kSelectionRate:
      return rates.selection_rate;
    case RateMeasure::kTpr:
      return rates.tpr;
    case RateMeasure::kFpr:
      return rates.fpr;
    case RateMeasure::kAccuracy:
      return rates.accuracy;
    case RateMeasure::kPpv:
      return rates.ppv;
  }
  return Fraction::Undefined();
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kSD:
      return "SD";
    case Metric::kEOD:
      return "EOD";
    case Metric::kPED:
      return "PED";
    case Metric::kOAD:
      return "OAD";
    case Metric::kPRD:
      return "PRD";
  }
  return "unknown";
}

RateMeasure MetricRate(Metric metric) {
  switch (metric) {
    case Metric::kSD:
      return RateMeasure::kSelectionRate;
    case Metric::kEOD:
      return RateMeasure::kTpr;
    case Metric::kPED:
      return RateMeasure::kFpr;
    case Metric::kOAD:
      return RateMeasure::kAccuracy;
    case Metric::kPRD:
      return RateMeasure::kPpv;
  }
  return RateMeasure::kSelectionRate;
}

absl::StatusOr<GroupedRates> ComputeGroupRates(std::span<const int> y_true,
                                               std::span<const int> y_pred,
                                               std::span<const int> groups) {
  if (y_true.size() != y_pred.size() || y_true.size() != groups.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "length mismatch: y_true ", y_true.size(), ", y_pred ", y_pred.size(),
        ", groups ", groups.size()));
  }
  ConfusionCounts counts[2];
  for (size_t i = 0; i < y_true.size(); ++i) {
    const int y = y_true[i];
    const int yhat = y_pred[i];
    const int g = groups[i];
    if ((y | yhat | g) & ~1) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-binary entry at position ", i));
    }
    ConfusionCounts& c = counts[g];
    if (y == 1) {
      ++(yhat == 1 ? c.tp : c.fn);
    } else {
      ++(yhat == 1 ? c.fp : c.tn);
    }
  }
  ConfusionCounts all{counts[0].tp + counts[1].tp, counts[0].fp + counts[1].fp,
                      counts[0].tn + counts[1].tn,
                      counts[0].fn + counts[1].fn};
  return GroupedRates{GroupRates::FromCounts(counts[1]),
                      GroupRates::FromCounts(counts[0]),
                      GroupRates::FromCounts(all)};
}

absl::StatusOr<DisparityReport> Disparity(const GroupRates& privileged,
                                          const GroupRates& unprivileged) {
  if (privileged.n() == 0 || unprivileged.n() == 0) {
    return absl::FailedPreconditionError(
        "disparity needs both groups to be non-empty");
  }
  DisparityReport report;
  for (Metric m : kAllMetrics) {
    const RateMeasure rate = MetricRate(m);
    report.values[static_cast<size_t>(m)] =
        Subtract(RateOf(privileged, rate), RateOf(unprivileged, rate));
  }
  return report;
}

}  // namespace ldpfair
