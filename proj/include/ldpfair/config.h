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

#ifndef LDPFAIR_CONFIG_H_
#define LDPFAIR_CONFIG_H_

#include <filesystem>

#include "absl/status/statusor.h"
#include "ldpfair/experiment.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Experiment config document. Every key is optional:
//   {
//     "dataset": "synthetic1" | "path/to/ingest.json" | {inline ingest},
//     "records": 100000,
//     "synthetic": {"alpha": 0.25, ...},
//     "regimes": ["Q1", "Q2", "Q3"],
//     "settings": ["noLDP", "sLDP", "combLDP", "indLDP"],
//     "epsilons": [16, 8, 5, 3, 2, 1, 0.5, 0.1],
//     "split_policy": "k-based",
//     "runs": 20, "folds": 10, "seed": 1, "threads": 0,
//     "forest": {"trees": 100, "max_depth": 0,
//                "min_samples_split": 2, "features_per_split": 0},
//     "out": "results", "format": "csv"
//   }
absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& doc, const std::filesystem::path& base_dir,
    ExperimentConfig base = {});

absl::StatusOr<ExperimentConfig> ReadExperimentConfig(
    const std::filesystem::path& file);

absl::StatusOr<nlohmann::json> ReadJsonFile(const std::filesystem::path& file);

absl::StatusOr<ReportFormat> ParseReportFormat(std::string_view name);

}  // namespace ldpfair

#endif  // LDPFAIR_CONFIG_H_
