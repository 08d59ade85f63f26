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

#include "ldpfair/config.h"

#include <set>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ldpfair/report.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

using nlohmann::json;

absl::Status CheckKeys(const json& doc, const std::set<std::string>& allowed,
                       std::string_view where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat(
          std::string(where), ": unknown key '", key, "' (allowed: ",
          absl::StrJoin(allowed, ", "), ")"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ForestParams> ForestFromJson(const json& doc,
                                            ForestParams base) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("forest must be an object");
  }
  RETURN_IF_ERROR(CheckKeys(doc,
                            {"trees", "max_depth", "min_samples_split",
                             "features_per_split", "bootstrap"},
                            "forest"));
  if (doc.contains("trees")) base.num_trees = doc.at("trees").get<int>();
  if (doc.contains("max_depth")) base.max_depth = doc.at("max_depth").get<int>();
  if (doc.contains("min_samples_split")) {
    base.min_samples_split = doc.at("min_samples_split").get<int>();
  }
  if (doc.contains("features_per_split")) {
    base.features_per_split = doc.at("features_per_split").get<int>();
  }
  if (doc.contains("bootstrap")) base.bootstrap = doc.at("bootstrap").get<bool>();
  RETURN_IF_ERROR(CheckForestParams(base));
  return base;
}

}  // namespace

absl::StatusOr<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown format '", std::string(name), "' (expected csv or json)"));
}

absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const json& doc, const std::filesystem::path& base_dir,
    ExperimentConfig base) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("experiment config must be an object");
  }
  ExperimentConfig config = std::move(base);
  try {
    RETURN_IF_ERROR(CheckKeys(
        doc,
        {"dataset", "records", "synthetic", "regimes", "settings", "epsilons",
         "split_policy", "runs", "folds", "seed", "threads", "forest", "out",
         "format"},
        "experiment config"));
    if (doc.contains("dataset")) {
      const json& d = doc.at("dataset");
      if (d.is_object()) {
        ASSIGN_OR_RETURN(IngestConfig ingest, IngestConfigFromJson(d, base_dir));
        config.ingest = std::move(ingest);
      } else {
        const std::string name = d.get<std::string>();
        config.ingest.reset();
        config.dataset = IsSyntheticPreset(name)
                             ? name
                             : (base_dir / name).lexically_normal().string();
      }
    }
    if (doc.contains("records")) {
      config.synthetic_records = doc.at("records").get<size_t>();
    }
    if (doc.contains("synthetic")) {
      SynthParams params;
      if (config.synthetic_params.has_value()) {
        params = *config.synthetic_params;
      } else if (IsSyntheticPreset(config.dataset)) {
        ASSIGN_OR_RETURN(params, PresetParams(config.dataset));
      }
      ASSIGN_OR_RETURN(params, SynthParamsFromJson(doc.at("synthetic"), params));
      config.synthetic_params = params;
    }
    if (doc.contains("regimes")) {
      config.regimes = doc.at("regimes").get<std::vector<std::string>>();
    }
    if (doc.contains("settings")) {
      config.settings.clear();
      for (const auto& s : doc.at("settings")) {
        ASSIGN_OR_RETURN(Setting setting, ParseSetting(s.get<std::string>()));
        config.settings.push_back(setting);
      }
    }
    if (doc.contains("epsilons")) {
      config.epsilons = doc.at("epsilons").get<std::vector<double>>();
    }
    if (doc.contains("split_policy")) {
      ASSIGN_OR_RETURN(config.split_policy,
                       ParseSplitPolicy(doc.at("split_policy").get<std::string>()));
    }
    if (doc.contains("runs")) config.runs = doc.at("runs").get<int>();
    if (doc.contains("folds")) config.folds = doc.at("folds").get<int>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<int>();
    if (doc.contains("forest")) {
      ASSIGN_OR_RETURN(config.forest,
                       ForestFromJson(doc.at("forest"), config.forest));
    }
    if (doc.contains("out")) {
      config.out_dir =
          (base_dir / doc.at("out").get<std::string>()).lexically_normal();
    }
    if (doc.contains("format")) {
      ASSIGN_OR_RETURN(config.format,
                       ParseReportFormat(doc.at("format").get<std::string>()));
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("experiment config: ", e.what()));
  }
  RETURN_IF_ERROR(CheckExperimentConfig(config));
  return config;
}

absl::StatusOr<json> ReadJsonFile(const std::filesystem::path& file) {
  ASSIGN_OR_RETURN(const std::string text, ReadTextFile(file));
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(file.string(), ": ", e.what()));
  }
}

absl::StatusOr<ExperimentConfig> ReadExperimentConfig(
    const std::filesystem::path& file) {
  ASSIGN_OR_RETURN(const json doc, ReadJsonFile(file));
  return ExperimentConfigFromJson(doc, file.parent_path());
}

}  // namespace ldpfair
