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

#include "ldpfair/synthetic.h"

#include <cmath>
#include <memory>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpfair/random.h"

namespace ldpfair {

SynthParams Synthetic1Params() { return SynthParams{}; }

SynthParams Synthetic2Params() {
  SynthParams params;
  params.alpha = -params.alpha;
  params.privileged_index = 0;
  return params;
}

bool IsSyntheticPreset(std::string_view name) {
  return name == "synthetic1" || name == "synthetic2";
}

absl::StatusOr<SynthParams> PresetParams(std::string_view name) {
  if (name == "synthetic1") return Synthetic1Params();
  if (name == "synthetic2") return Synthetic2Params();
  return absl::NotFoundError(absl::StrCat("unknown synthetic preset '", std::string(name),
                                          "'"));
}

absl::StatusOr<SynthParams> SynthParamsFromJson(const nlohmann::json& doc,
                                                SynthParams base) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("synthetic params must be an object");
  }
  try {
    base.p_c = doc.value("p_c", base.p_c);
    if (doc.contains("p_a_given_c")) {
      base.p_a_given_c = doc.at("p_a_given_c").get<std::array<double, 2>>();
    }
    if (doc.contains("p_m_given_a")) {
      base.p_m_given_a =
          doc.at("p_m_given_a").get<std::array<std::array<double, 3>, 2>>();
    }
    base.alpha = doc.value("alpha", base.alpha);
    base.beta = doc.value("beta", base.beta);
    base.gamma = doc.value("gamma", base.gamma);
    base.noise_scale = doc.value("noise_scale", base.noise_scale);
    base.privileged_index = doc.value("privileged_index", base.privileged_index);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed synthetic params: ", e.what()));
  }
  if (auto s = CheckSynthParams(base); !s.ok()) return s;
  return base;
}

absl::Status CheckSynthParams(const SynthParams& params) {
  auto bernoulli_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!bernoulli_ok(params.p_c) || !bernoulli_ok(params.p_a_given_c[0]) ||
      !bernoulli_ok(params.p_a_given_c[1])) {
    return absl::InvalidArgumentError(
        "Bernoulli parameters must lie in [0, 1]");
  }
  for (const auto& probs : params.p_m_given_a) {
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) {
        return absl::InvalidArgumentError(
            "multinomial probabilities must be non-negative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrCat("multinomial probabilities sum to ", sum, ", not 1"));
    }
  }
  if (!(params.noise_scale >= 0.0) || !std::isfinite(params.alpha) ||
      !std::isfinite(params.beta) || !std::isfinite(params.gamma)) {
    return absl::InvalidArgumentError("coefficients must be finite");
  }
  if (params.privileged_index != 0 && params.privileged_index != 1) {
    return absl::InvalidArgumentError("privileged_index must be 0 or 1");
  }
  return absl::OkStatus();
}

Schema SyntheticFeatureSchema(const SynthParams& params) {
  Schema schema;
  schema.attributes = {
      {"A", {"0", "1"}, Role::kProtected},
      {"C", {"0", "1"}, Role::kSensitive},
      {"M", {"0", "1", "2"}, Role::kSensitive},
  };
  schema.sensitive_order = {"A", "C", "M"};
  schema.privileged_index = params.privileged_index;
  return schema;
}

absl::StatusOr<ScoredData> GenerateSynthetic(const SynthParams& params,
                                             size_t n, uint64_t seed) {
  if (auto s = CheckSynthParams(params); !s.ok()) return s;
  Prng rng(seed);
  std::vector<int> a(n), c(n), m(n);
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) {
    c[i] = rng.Bernoulli(params.p_c) ? 1 : 0;
    a[i] = rng.Bernoulli(params.p_a_given_c[c[i]]) ? 1 : 0;
    m[i] = static_cast<int>(rng.Categorical(params.p_m_given_a[a[i]]));
    y[i] = params.alpha * a[i] + params.beta * m[i] + params.gamma * c[i] +
           params.noise_scale * rng.StandardNormal();
  }
  auto schema =
      std::make_shared<const Schema>(SyntheticFeatureSchema(params));
  std::vector<std::vector<int>> columns = {std::move(a), std::move(c),
                                           std::move(m)};
  return ScoredData{Dataset(std::move(schema), std::move(columns)),
                    std::move(y)};
}

std::vector<Regime> SyntheticRegimes() {
  return {{"Q1", ThresholdSpec::Quantile(0.25)},
          {"Q2", ThresholdSpec::Quantile(0.5)},
          {"Q3", ThresholdSpec::Quantile(0.75)}};
}

}  // namespace ldpfair
