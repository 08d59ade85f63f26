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

#ifndef LDPFAIR_RANDOMIZERS_H_
#define LDPFAIR_RANDOMIZERS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"
#include "ldpfair/random.h"
#include "ldpfair/schema.h"

namespace ldpfair {

// k-ary randomized response parameters: report the true value with
// probability p, each of the k - 1 other values with probability q.
struct KrrParams {
  int64_t k = 0;
  double epsilon = 0.0;
  double p = 1.0;
  double q = 0.0;
};

// Requires k >= 2 and epsilon > 0. epsilon = +infinity yields the identity
// mechanism (p = 1, q = 0).
absl::StatusOr<KrrParams> MakeKrrParams(int64_t k, double epsilon);

// Randomizes one value in [0, k). The replacement value is drawn uniformly
// from the k - 1 other values by offsetting past `value`.
absl::StatusOr<int64_t> KrrRandomize(int64_t value, const KrrParams& params,
                                     Prng& rng);

// Unchecked hot-path variant; `value` must be in [0, params.k).
inline int64_t KrrRandomizeUnchecked(int64_t value, const KrrParams& params,
                                     Prng& rng) {
  if (rng.UniformDouble() < params.p) return value;
  const auto other = static_cast<int64_t>(
      rng.UniformInt(static_cast<uint64_t>(params.k - 1)));
  return other < value ? other : other + 1;
}

enum class Setting { kNoLdp, kSingleLdp, kCombinedLdp, kIndependentLdp };
inline constexpr Setting kAllSettings[] = {
    Setting::kNoLdp, Setting::kSingleLdp, Setting::kCombinedLdp,
    Setting::kIndependentLdp};

std::string_view SettingName(Setting setting);  // noLDP, sLDP, ...
absl::StatusOr<Setting> ParseSetting(std::string_view name);

enum class SplitPolicy { kUniform, kKBased };
std::string_view SplitPolicyName(SplitPolicy policy);  // uniform, k-based
absl::StatusOr<SplitPolicy> ParseSplitPolicy(std::string_view name);

struct MechanismConfig {
  Setting setting = Setting::kNoLdp;
  double epsilon = 1.0;  // ignored for noLDP
  SplitPolicy split_policy = SplitPolicy::kKBased;
};

// Per-attribute budgets, aligned with the sensitive order.
struct BudgetSplit {
  std::vector<double> budgets;
};

// k-based: eps_i = eps * k_i / sum_j k_j. uniform: eps_i = eps / d.
absl::StatusOr<BudgetSplit> SplitBudget(std::span<const int> domain_sizes,
                                        double epsilon, SplitPolicy policy);

// Row-major bijection between tuples and [0, prod k_i); the first
// component is the most significant.
absl::StatusOr<int64_t> CartesianEncode(std::span<const int> values,
                                        std::span<const int> domain_sizes);
absl::StatusOr<std::vector<int>> CartesianDecode(
    int64_t joint, std::span<const int> domain_sizes);

// Applies one privacy setting to sensitive tuples aligned with the schema's
// sensitive order. Built once per (config, schema), then reused.
class RecordRandomizer {
 public:
  static absl::StatusOr<RecordRandomizer> Create(const MechanismConfig& config,
                                                 const Schema& schema);

  const MechanismConfig& config() const { return config_; }
  std::span<const int> domain_sizes() const { return domain_sizes_; }
  // Position of the protected attribute within the sensitive tuple.
  size_t protected_position() const { return protected_position_; }
  // k-RR parameters actually used: one entry for sLDP and combLDP, one per
  // attribute for indLDP, none for noLDP.
  std::span<const KrrParams> params() const { return params_; }

  absl::StatusOr<std::vector<int>> Randomize(std::span<const int> values,
                                             Prng& rng) const;
  // `values` is randomized in place. Values must be in range.
  void RandomizeInPlace(std::span<int> values, Prng& rng) const;

 private:
  RecordRandomizer() = default;

  MechanismConfig config_;
  std::vector<int> domain_sizes_;
  size_t protected_position_ = 0;
  std::vector<KrrParams> params_;
};

absl::StatusOr<std::vector<int>> RandomizeRecord(std::span<const int> values,
                                                 const MechanismConfig& config,
                                                 const Schema& schema,
                                                 Prng& rng);

// Returns a copy of `dataset` whose sensitive columns have been randomized
// record by record. Non-sensitive and outcome columns are untouched.
absl::StatusOr<Dataset> ObfuscateDataset(const Dataset& dataset,
                                         const MechanismConfig& config,
                                         Prng& rng);

// Dense row-major square matrix.
struct Matrix {
  size_t size = 0;
  std::vector<double> values;

  double operator()(size_t row, size_t col) const {
    return values[row * size + col];
  }
  double& operator()(size_t row, size_t col) {
    return values[row * size + col];
  }
};

inline constexpr int64_t kDefaultMatrixCap = 4096;

// Analytic P(output = z | input = a) over the mechanism's input domain: the
// joint sensitive domain for noLDP, combLDP and indLDP, and the protected
// attribute's domain for sLDP (the only attribute that setting randomizes).
absl::StatusOr<Matrix> TransitionMatrix(const MechanismConfig& config,
                                        const Schema& schema,
                                        int64_t cap = kDefaultMatrixCap);

// max over z, a, a' of T[a, z] / T[a', z]. Infinite when some output is
// reachable from one input and not another.
double MaxPrivacyRatio(const Matrix& matrix);

std::string MatrixToCsv(const Matrix& matrix);

// Minimal schema with the given sensitive domains; the first attribute is
// the protected one. Useful for inspecting mechanisms in isolation.
Schema SensitiveOnlySchema(std::span<const int> domain_sizes);

}  // namespace ldpfair

#endif  // LDPFAIR_RANDOMIZERS_H_
