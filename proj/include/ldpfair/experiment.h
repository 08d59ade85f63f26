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

#ifndef LDPFAIR_EXPERIMENT_H_
#define LDPFAIR_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"
#include "ldpfair/forest.h"
#include "ldpfair/ingest.h"
#include "ldpfair/outcome.h"
#include "ldpfair/randomizers.h"
#include "ldpfair/synthetic.h"

namespace ldpfair {

enum class ReportFormat { kCsv, kJson };

struct ExperimentConfig {
  // Preset name ("synthetic1", "synthetic2") or path to an ingest config.
  std::string dataset = "synthetic1";
  // Inline ingest config; takes precedence over `dataset` when set.
  std::optional<IngestConfig> ingest;
  // Synthetic presets only.
  size_t synthetic_records = 100000;
  std::optional<SynthParams> synthetic_params;
  // Regime names to run; empty runs every regime of the source.
  std::vector<std::string> regimes;
  std::vector<Setting> settings = {std::begin(kAllSettings),
                                   std::end(kAllSettings)};
  std::vector<double> epsilons = {16, 8, 5, 3, 2, 1, 0.5, 0.1};
  SplitPolicy split_policy = SplitPolicy::kKBased;
  int runs = 20;
  int folds = 10;
  uint64_t seed = 1;
  ForestParams forest;
  std::filesystem::path out_dir = "results";
  ReportFormat format = ReportFormat::kCsv;
  // Worker threads; 0 uses the hardware concurrency.
  int threads = 0;
};

absl::Status CheckExperimentConfig(const ExperimentConfig& config);

inline constexpr std::string_view kPrivilegedGroup = "privileged";
inline constexpr std::string_view kUnprivilegedGroup = "unprivileged";
inline constexpr std::string_view kOverallGroup = "overall";

// One measured cell. Disparity measures (SD, EOD, PED, OAD, PRD) are
// reported under the "overall" group.
struct ResultRow {
  std::string dataset;
  std::string regime;
  Setting setting = Setting::kNoLdp;
  double epsilon = 0.0;
  int run = 0;
  int fold = 0;
  std::string group;
  std::string measure;
  std::optional<double> value;  // nullopt = UNDEFINED
};

// A binarized dataset ready for the sweep.
struct PreparedDataset {
  std::string name;
  Regime regime;
  Dataset data;
};

// Generates or loads the source once and binarizes it for every selected
// regime.
absl::StatusOr<std::vector<PreparedDataset>> PrepareDatasets(
    const ExperimentConfig& config);

// Assigns each record a fold in [0, folds) so that every stratum is spread
// evenly over the folds.
std::vector<int> StratifiedFolds(std::span<const int> strata, int folds,
                                 Prng& rng);

// Seed streams. Each random consumer draws from DeriveSeed(master,
// {stream, ...indices}).
enum SeedStream : uint64_t {
  kDataSeedStream = 1,
  kFoldSeedStream = 2,
  kForestSeedStream = 3,
  kMechanismSeedStream = 4,
};

uint64_t FoldSeed(uint64_t master, int run);
uint64_t ForestSeed(uint64_t master, int run, int fold);
uint64_t MechanismSeed(uint64_t master, int run, int fold, Setting setting,
                       double epsilon);

// What one trained model saw; handed to an optional observer so that
// callers can audit the pipeline.
struct FoldTrace {
  int run = 0;
  int fold = 0;
  Setting setting = Setting::kNoLdp;
  double epsilon = 0.0;  // 0 for noLDP
  uint64_t forest_seed = 0;
  const Dataset* train = nullptr;  // after obfuscation
  const Dataset* test = nullptr;   // as passed to prediction
  uint64_t test_digest_before = 0;
  std::span<const size_t> train_rows;
  std::span<const size_t> test_rows;
};
using FoldObserver = std::function<void(const FoldTrace&)>;

// Runs the cross-validated sweep on one binarized dataset. For each run the
// folds are redrawn; within a fold the training portion is obfuscated per
// (setting, epsilon) while the test portion stays original. noLDP is trained
// once per fold and its rows are repeated for every epsilon.
absl::StatusOr<std::vector<ResultRow>> RunOnDataset(
    const PreparedDataset& input, const ExperimentConfig& config,
    const FoldObserver& observer = nullptr);

absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config);

struct SummaryRow {
  std::string dataset;
  std::string regime;
  std::string setting;
  double epsilon = 0.0;
  std::string group;
  std::string measure;
  std::optional<double> mean;
  std::optional<double> sd;  // population standard deviation
  size_t n_included = 0;
  size_t n_excluded = 0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

// Reduces over runs and folds. UNDEFINED values are excluded and counted;
// an all-UNDEFINED key has an UNDEFINED mean and sd. Keys keep the order of
// their first appearance.
absl::StatusOr<std::vector<SummaryRow>> Aggregate(
    std::span<const ResultRow> rows);

// Looks up a summary cell; nullptr when absent.
const SummaryRow* FindSummary(std::span<const SummaryRow> summary,
                              std::string_view regime, Setting setting,
                              double epsilon, std::string_view group,
                              std::string_view measure);

}  // namespace ldpfair

#endif  // LDPFAIR_EXPERIMENT_H_
