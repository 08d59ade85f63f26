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

#include "ldpfair/randomizers.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpfair/report.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

absl::StatusOr<KrrParams> MakeKrrParams(int64_t k, double epsilon) {
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("k-RR needs a domain of size >= 2, got ", k));
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be positive, got ", epsilon));
  }
  KrrParams params;
  params.k = k;
  params.epsilon = epsilon;
  if (std::isinf(epsilon)) {
    params.p = 1.0;
    params.q = 0.0;
    return params;
  }
  // p = e^eps / (e^eps + k - 1), written with e^-eps so it cannot overflow.
  const double decay = std::exp(-epsilon);
  const double denom = 1.0 + static_cast<double>(k - 1) * decay;
  params.p = 1.0 / denom;
  params.q = decay / denom;
  return params;
}

absl::StatusOr<int64_t> KrrRandomize(int64_t value, const KrrParams& params,
                                     Prng& rng) {
  if (params.k < 2) {
    return absl::InvalidArgumentError("k-RR parameters need k >= 2");
  }
  if (value < 0 || value >= params.k) {
    return absl::OutOfRangeError(
        absl::StrCat("value ", value, " outside [0, ", params.k, ")"));
  }
  return KrrRandomizeUnchecked(value, params, rng);
}

std::string_view SettingName(Setting setting) {
  switch (setting) {
    case Setting::kNoLdp:
      return "noLDP";
    case Setting::kSingleLdp:
      return "sLDP";
    case Setting::kCombinedLdp:
      return "combLDP";
    case Setting::kIndependentLdp:
      return "indLDP";
  }
  return "unknown";
}

absl::StatusOr<Setting> ParseSetting(std::string_view name) {
  for (Setting s : kAllSettings) {
    if (SettingName(s) == name) return s;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown setting '", std::string(name),
                   "' (expected noLDP, sLDP, combLDP or indLDP)"));
}

std::string_view SplitPolicyName(SplitPolicy policy) {
  return policy == SplitPolicy::kUniform ? "uniform" : "k-based";
}

absl::StatusOr<SplitPolicy> ParseSplitPolicy(std::string_view name) {
  if (name == "uniform") return SplitPolicy::kUniform;
  if (name == "k-based" || name == "k_based") return SplitPolicy::kKBased;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown split policy '", std::string(name), "' (expected uniform or k-based)"));
}

absl::StatusOr<BudgetSplit> SplitBudget(std::span<const int> domain_sizes,
                                        double epsilon, SplitPolicy policy) {
  if (domain_sizes.empty()) {
    return absl::InvalidArgumentError("budget split needs d >= 1 attributes");
  }
  if (!(epsilon > 0.0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be positive and finite, got ",
                     epsilon));
  }
  double total_k = 0.0;
  for (int k : domain_sizes) {
    if (k < 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("domain sizes must be >= 2, got ", k));
    }
    total_k += k;
  }
  BudgetSplit split;
  split.budgets.reserve(domain_sizes.size());
  const double d = static_cast<double>(domain_sizes.size());
  for (int k : domain_sizes) {
    split.budgets.push_back(policy == SplitPolicy::kKBased
                                ? epsilon * k / total_k
                                : epsilon / d);
  }
  return split;
}

absl::StatusOr<int64_t> CartesianEncode(std::span<const int> values,
                                        std::span<const int> domain_sizes) {
  if (values.size() != domain_sizes.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("tuple has ", values.size(), " components, expected ",
                     domain_sizes.size()));
  }
  int64_t joint = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    const int k = domain_sizes[i];
    if (k < 1) return absl::InvalidArgumentError("domain sizes must be >= 1");
    if (values[i] < 0 || values[i] >= k) {
      return absl::OutOfRangeError(absl::StrCat(
          "component ", i, " = ", values[i], " outside [0, ", k, ")"));
    }
    if (joint > (std::numeric_limits<int64_t>::max() - values[i]) / k) {
      return absl::OutOfRangeError("joint domain exceeds 64 bits");
    }
    joint = joint * k + values[i];
  }
  return joint;
}

absl::StatusOr<std::vector<int>> CartesianDecode(
    int64_t joint, std::span<const int> domain_sizes) {
  if (joint < 0) return absl::OutOfRangeError("negative joint index");
  std::vector<int> values(domain_sizes.size());
  int64_t rest = joint;
  for (size_t i = domain_sizes.size(); i-- > 0;) {
    const int k = domain_sizes[i];
    if (k < 1) return absl::InvalidArgumentError("domain sizes must be >= 1");
    values[i] = static_cast<int>(rest % k);
    rest /= k;
  }
  if (rest != 0) {
    return absl::OutOfRangeError(
        absl::StrCat("joint index ", joint, " outside the joint domain"));
  }
  return values;
}

namespace {

absl::StatusOr<int64_t> JointSize(std::span<const int> domain_sizes,
                                  int64_t cap) {
  int64_t size = 1;
  for (int k : domain_sizes) {
    if (size > cap / k) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "joint sensitive domain exceeds the cap of ", cap));
    }
    size *= k;
  }
  return size;
}

}  // namespace

absl::StatusOr<RecordRandomizer> RecordRandomizer::Create(
    const MechanismConfig& config, const Schema& schema) {
  RecordRandomizer out;
  out.config_ = config;
  ASSIGN_OR_RETURN(const std::vector<size_t> sensitive,
                   schema.SensitiveIndices());
  if (sensitive.empty()) {
    return absl::FailedPreconditionError("schema has no sensitive attributes");
  }
  ASSIGN_OR_RETURN(const size_t protected_idx, schema.ProtectedIndex());
  bool found = false;
  for (size_t i = 0; i < sensitive.size(); ++i) {
    const size_t a = sensitive[i];
    out.domain_sizes_.push_back(schema.attributes[a].domain_size());
    if (a == protected_idx) {
      out.protected_position_ = i;
      found = true;
    }
  }
  if (!found) {
    return absl::FailedPreconditionError(
        "protected attribute missing from the sensitive order");
  }

  switch (config.setting) {
    case Setting::kNoLdp:
      break;
    case Setting::kSingleLdp: {
      ASSIGN_OR_RETURN(
          KrrParams p,
          MakeKrrParams(out.domain_sizes_[out.protected_position_],
                        config.epsilon));
      out.params_.push_back(p);
      break;
    }
    case Setting::kCombinedLdp: {
      ASSIGN_OR_RETURN(
          const int64_t joint,
          JointSize(out.domain_sizes_, std::numeric_limits<int64_t>::max()));
      ASSIGN_OR_RETURN(KrrParams p, MakeKrrParams(joint, config.epsilon));
      out.params_.push_back(p);
      break;
    }
    case Setting::kIndependentLdp: {
      ASSIGN_OR_RETURN(
          const BudgetSplit split,
          SplitBudget(out.domain_sizes_, config.epsilon, config.split_policy));
      for (size_t i = 0; i < out.domain_sizes_.size(); ++i) {
        ASSIGN_OR_RETURN(KrrParams p, MakeKrrParams(out.domain_sizes_[i],
                                                    split.budgets[i]));
        out.params_.push_back(p);
      }
      break;
    }
  }
  return out;
}

void RecordRandomizer::RandomizeInPlace(std::span<int> values,
                                        Prng& rng) const {
  switch (config_.setting) {
    case Setting::kNoLdp:
      return;
    case Setting::kSingleLdp: {
      int& v = values[protected_position_];
      v = static_cast<int>(KrrRandomizeUnchecked(v, params_[0], rng));
      return;
    }
    case Setting::kCombinedLdp: {
      int64_t joint = 0;
      for (size_t i = 0; i < values.size(); ++i) {
        joint = joint * domain_sizes_[i] + values[i];
      }
      int64_t z = KrrRandomizeUnchecked(joint, params_[0], rng);
      for (size_t i = values.size(); i-- > 0;) {
        values[i] = static_cast<int>(z % domain_sizes_[i]);
        z /= domain_sizes_[i];
      }
      return;
    }
    case Setting::kIndependentLdp:
      for (size_t i = 0; i < values.size(); ++i) {
        values[i] =
            static_cast<int>(KrrRandomizeUnchecked(values[i], params_[i], rng));
      }
      return;
  }
}

absl::StatusOr<std::vector<int>> RecordRandomizer::Randomize(
    std::span<const int> values, Prng& rng) const {
  if (values.size() != domain_sizes_.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitive tuple has ", values.size(),
                     " components, expected ", domain_sizes_.size()));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] >= domain_sizes_[i]) {
      return absl::OutOfRangeError(
          absl::StrCat("component ", i, " = ", values[i], " outside [0, ",
                       domain_sizes_[i], ")"));
    }
  }
  std::vector<int> out(values.begin(), values.end());
  RandomizeInPlace(out, rng);
  return out;
}

absl::StatusOr<std::vector<int>> RandomizeRecord(std::span<const int> values,
                                                 const MechanismConfig& config,
                                                 const Schema& schema,
                                                 Prng& rng) {
  ASSIGN_OR_RETURN(const RecordRandomizer randomizer,
                   RecordRandomizer::Create(config, schema));
  return randomizer.Randomize(values, rng);
}

absl::StatusOr<Dataset> ObfuscateDataset(const Dataset& dataset,
                                         const MechanismConfig& config,
                                         Prng& rng) {
  const Schema& schema = dataset.schema();
  ASSIGN_OR_RETURN(const RecordRandomizer randomizer,
                   RecordRandomizer::Create(config, schema));
  if (config.setting == Setting::kNoLdp) return dataset;
  ASSIGN_OR_RETURN(const std::vector<size_t> sensitive,
                   schema.SensitiveIndices());

  const size_t n = dataset.num_records();
  std::vector<std::vector<int>> columns(sensitive.size());
  for (size_t i = 0; i < sensitive.size(); ++i) {
    const auto col = dataset.column(sensitive[i]);
    for (int v : col) {
      if (v < 0 || v >= randomizer.domain_sizes()[i]) {
        return absl::OutOfRangeError(absl::StrCat(
            "value ", v, " outside the domain of '",
            schema.attributes[sensitive[i]].name, "'"));
      }
    }
    columns[i].assign(col.begin(), col.end());
  }
  std::vector<int> tuple(sensitive.size());
  for (size_t r = 0; r < n; ++r) {
    for (size_t i = 0; i < tuple.size(); ++i) tuple[i] = columns[i][r];
    randomizer.RandomizeInPlace(tuple, rng);
    for (size_t i = 0; i < tuple.size(); ++i) columns[i][r] = tuple[i];
  }

  Dataset out = dataset;
  for (size_t i = 0; i < sensitive.size(); ++i) {
    out = out.WithColumn(sensitive[i], std::move(columns[i]));
  }
  return out;
}

namespace {

Matrix KrrMatrix(const KrrParams& params) {
  const auto k = static_cast<size_t>(params.k);
  Matrix m{k, std::vector<double>(k * k, params.q)};
  for (size_t i = 0; i < k; ++i) m(i, i) = params.p;
  return m;
}

Matrix Kronecker(const Matrix& a, const Matrix& b) {
  Matrix out{a.size * b.size,
             std::vector<double>(a.size * b.size * a.size * b.size)};
  for (size_t i = 0; i < a.size; ++i) {
    for (size_t j = 0; j < a.size; ++j) {
      for (size_t r = 0; r < b.size; ++r) {
        for (size_t c = 0; c < b.size; ++c) {
          out(i * b.size + r, j * b.size + c) = a(i, j) * b(r, c);
        }
      }
    }
  }
  return out;
}

}  // namespace

absl::StatusOr<Matrix> TransitionMatrix(const MechanismConfig& config,
                                        const Schema& schema, int64_t cap) {
  ASSIGN_OR_RETURN(const RecordRandomizer randomizer,
                   RecordRandomizer::Create(config, schema));
  const auto sizes = randomizer.domain_sizes();
  auto joint = JointSize(sizes, cap);
  if (!joint.ok()) {
    int64_t full = 1;
    for (int k : sizes) full *= k;  // only reported, overflow is harmless
    return absl::ResourceExhaustedError(absl::StrCat(
        "joint sensitive domain of size ", full, " exceeds the cap of ", cap));
  }
  switch (config.setting) {
    case Setting::kNoLdp: {
      const auto k = static_cast<size_t>(*joint);
      Matrix m{k, std::vector<double>(k * k, 0.0)};
      for (size_t i = 0; i < k; ++i) m(i, i) = 1.0;
      return m;
    }
    case Setting::kSingleLdp:
    case Setting::kCombinedLdp:
      return KrrMatrix(randomizer.params()[0]);
    case Setting::kIndependentLdp: {
      Matrix m{1, {1.0}};
      for (const KrrParams& p : randomizer.params()) {
        m = Kronecker(m, KrrMatrix(p));
      }
      return m;
    }
  }
  return absl::InternalError("unhandled setting");
}

double MaxPrivacyRatio(const Matrix& matrix) {
  double worst = 1.0;
  for (size_t z = 0; z < matrix.size; ++z) {
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < matrix.size; ++a) {
      hi = std::max(hi, matrix(a, z));
      lo = std::min(lo, matrix(a, z));
    }
    if (hi == 0.0) continue;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, hi / lo);
  }
  return worst;
}

std::string MatrixToCsv(const Matrix& matrix) {
  std::string out;
  for (size_t r = 0; r < matrix.size; ++r) {
    for (size_t c = 0; c < matrix.size; ++c) {
      if (c > 0) out += ',';
      out += FormatDouble(matrix(r, c));
    }
    out += '\n';
  }
  return out;
}

Schema SensitiveOnlySchema(std::span<const int> domain_sizes) {
  Schema schema;
  for (size_t i = 0; i < domain_sizes.size(); ++i) {
    AttributeSpec spec;
    spec.name = absl::StrCat("S", i);
    spec.role = i == 0 ? Role::kProtected : Role::kSensitive;
    for (int v = 0; v < domain_sizes[i]; ++v) {
      spec.domain.push_back(absl::StrCat(v));
    }
    schema.attributes.push_back(std::move(spec));
  }
  schema.attributes.push_back({"Y", {"0", "1"}, Role::kOutcome});
  return schema;
}

}  // namespace ldpfair
