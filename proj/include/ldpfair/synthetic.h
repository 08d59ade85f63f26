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

#ifndef LDPFAIR_SYNTHETIC_H_
#define LDPFAIR_SYNTHETIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/outcome.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Structural causal model C -> A -> M -> Y with C -> Y and A -> Y:
//   C ~ Bernoulli(p_c)
//   A | C=c ~ Bernoulli(p_a_given_c[c])
//   M | A=a ~ Categorical(p_m_given_a[a]) over {0, 1, 2}
//   Y = alpha * A + beta * M + gamma * C + noise_scale * N(0, 1)
struct SynthParams {
  double p_c = 0.35;
  std::array<double, 2> p_a_given_c = {0.55, 0.75};
  std::array<std::array<double, 3>, 2> p_m_given_a = {{{0.35, 0.4, 0.25},
                                                       {0.5, 0.4, 0.1}}};
  double alpha = 0.25;
  double beta = 1.25;
  double gamma = 1.25;
  double noise_scale = 1.0;
  // Index of the privileged value of A recorded in the schema.
  int privileged_index = 1;
};

SynthParams Synthetic1Params();
// Same causal graph with the direct effect of A reversed, so A = 0 is the
// privileged group.
SynthParams Synthetic2Params();

bool IsSyntheticPreset(std::string_view name);
absl::StatusOr<SynthParams> PresetParams(std::string_view name);

// Keys mirror the struct fields; absent keys keep the values of `base`.
absl::StatusOr<SynthParams> SynthParamsFromJson(const nlohmann::json& doc,
                                                SynthParams base);

absl::Status CheckSynthParams(const SynthParams& params);

// Attributes A (protected), C and M (sensitive); sensitive order A, C, M.
Schema SyntheticFeatureSchema(const SynthParams& params);

absl::StatusOr<ScoredData> GenerateSynthetic(const SynthParams& params,
                                             size_t n, uint64_t seed);

// Q1/Q2/Q3 at quantile levels 0.25/0.5/0.75 (positive rates 0.75/0.5/0.25).
std::vector<Regime> SyntheticRegimes();

}  // namespace ldpfair

#endif  // LDPFAIR_SYNTHETIC_H_
