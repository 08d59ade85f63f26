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

#ifndef LDPFAIR_TESTS_FAIRNESS_ORACLE_H_
#define LDPFAIR_TESTS_FAIRNESS_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "ldpfair/fairness.h"

namespace ldpfair {

// Exact ratio from the oracle: nullopt when the denominator is zero.
struct Ratio {
  int64_t num = 0;
  int64_t den = 0;
};

// Brute-force rate behind `metric` for one group, counted record by record.
inline std::optional<Ratio> OracleRate(const std::vector<int>& y,
                                       const std::vector<int>& yhat,
                                       const std::vector<int>& g, int group,
                                       Metric metric) {
  Ratio r;
  for (size_t i = 0; i < y.size(); ++i) {
    if (g[i] != group) continue;
    switch (metric) {
      case Metric::kSD:  // P(yhat = 1)
        ++r.den;
        r.num += yhat[i] == 1;
        break;
      case Metric::kEOD:  // P(yhat = 1 | y = 1)
        if (y[i] == 1) {
          ++r.den;
          r.num += yhat[i] == 1;
        }
        break;
      case Metric::kPED:  // P(yhat = 1 | y = 0)
        if (y[i] == 0) {
          ++r.den;
          r.num += yhat[i] == 1;
        }
        break;
      case Metric::kOAD:  // P(yhat = y)
        ++r.den;
        r.num += yhat[i] == y[i];
        break;
      case Metric::kPRD:  // P(y = 1 | yhat = 1)
        if (yhat[i] == 1) {
          ++r.den;
          r.num += y[i] == 1;
        }
        break;
    }
  }
  if (r.den == 0) return std::nullopt;
  return r;
}

// True when `got` equals priv - unpriv from the oracle, or both are
// undefined. Compared by cross-multiplication, never in floating point.
inline bool MatchesOracle(const Fraction& got, const std::vector<int>& y,
                          const std::vector<int>& yhat,
                          const std::vector<int>& g, Metric metric) {
  const auto priv = OracleRate(y, yhat, g, 1, metric);
  const auto unpriv = OracleRate(y, yhat, g, 0, metric);
  if (!priv || !unpriv) return !got.defined();
  const int64_t num = priv->num * unpriv->den - unpriv->num * priv->den;
  const int64_t den = priv->den * unpriv->den;
  return got.defined() && got.num * den == num * got.den;
}

}  // namespace ldpfair

#endif  // LDPFAIR_TESTS_FAIRNESS_ORACLE_H_
