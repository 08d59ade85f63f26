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

// Command-line front end: run experiments, validate inputs, dump matrices.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "ldpfair/config.h"
#include "ldpfair/experiment.h"
#include "ldpfair/ingest.h"
#include "ldpfair/randomizers.h"
#include "ldpfair/report.h"
#include "ldpfair/schema.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kBadInput = 3,
  kIo = 4,
  kInvalidData = 5,
};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return kBadInput;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kPermissionDenied:
      return kIo;
    case absl::StatusCode::kFailedPrecondition:
      return kInvalidData;
    default:
      return kInternal;
  }
}

std::string_view Category(int code) {
  switch (code) {
    case kBadInput:
      return "invalid input";
    case kIo:
      return "i/o error";
    case kInvalidData:
      return "invalid data";
    default:
      return "internal error";
  }
}

int Fail(const absl::Status& status) {
  const int code = ExitCodeFor(status);
  std::cerr << "error (" << Category(code) << "): " << status.message()
            << "\n";
  return code;
}

std::vector<std::string> SplitList(const std::string& text) {
  return absl::StrSplit(text, ',', absl::SkipEmpty());
}

absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : SplitList(text)) {
    double v = 0.0;
    if (!absl::SimpleAtod(item, &v)) {
      return absl::InvalidArgumentError(absl::StrCat("bad number '", item, "'"));
    }
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<std::vector<int>> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : SplitList(text)) {
    int v = 0;
    if (!absl::SimpleAtoi(item, &v)) {
      return absl::InvalidArgumentError(absl::StrCat("bad integer '", item, "'"));
    }
    out.push_back(v);
  }
  return out;
}

struct RunFlags {
  std::string config;
  std::string dataset;
  std::string settings;
  std::string epsilons;
  std::string regimes;
  std::string split_policy;
  std::string out;
  std::string format;
  std::optional<int> runs;
  std::optional<int> folds;
  std::optional<uint64_t> seed;
  std::optional<size_t> records;
  std::optional<int> threads;
  std::optional<int> trees;
  bool per_fold = false;
};

absl::StatusOr<ExperimentConfig> BuildConfig(const RunFlags& f) {
  ExperimentConfig config;
  if (!f.config.empty()) {
    ASSIGN_OR_RETURN(config, ReadExperimentConfig(f.config));
  }
  if (!f.dataset.empty()) {
    config.dataset = f.dataset;
    config.ingest.reset();
  }
  if (!f.settings.empty()) {
    config.settings.clear();
    for (const std::string& s : SplitList(f.settings)) {
      ASSIGN_OR_RETURN(Setting setting, ParseSetting(s));
      config.settings.push_back(setting);
    }
  }
  if (!f.epsilons.empty()) {
    ASSIGN_OR_RETURN(config.epsilons, ParseDoubleList(f.epsilons));
  }
  if (!f.regimes.empty()) {
    config.regimes = SplitList(f.regimes);
  }
  if (!f.split_policy.empty()) {
    ASSIGN_OR_RETURN(config.split_policy, ParseSplitPolicy(f.split_policy));
  }
  if (!f.out.empty()) config.out_dir = f.out;
  if (!f.format.empty()) {
    ASSIGN_OR_RETURN(config.format, ParseReportFormat(f.format));
  }
  if (f.runs) config.runs = *f.runs;
  if (f.folds) config.folds = *f.folds;
  if (f.seed) config.seed = *f.seed;
  if (f.records) config.synthetic_records = *f.records;
  if (f.threads) config.threads = *f.threads;
  if (f.trees) config.forest.num_trees = *f.trees;
  RETURN_IF_ERROR(CheckExperimentConfig(config));
  return config;
}

absl::Status Run(const RunFlags& flags) {
  ASSIGN_OR_RETURN(const ExperimentConfig config, BuildConfig(flags));
  ASSIGN_OR_RETURN(const std::vector<ResultRow> rows, RunExperiment(config));
  ASSIGN_OR_RETURN(const std::vector<SummaryRow> summary, Aggregate(rows));
  ASSIGN_OR_RETURN(const auto path,
                   EmitReport(summary, config.out_dir, config.format));
  std::cout << "wrote " << path.string() << "\n";
  if (flags.per_fold) {
    const auto rows_path = config.out_dir / "rows.csv";
    RETURN_IF_ERROR(WriteTextFile(rows_path, ResultRowsToCsv(rows)));
    std::cout << "wrote " << rows_path.string() << "\n";
  }
  return absl::OkStatus();
}

struct ValidateFlags {
  std::string schema;
  std::string ingest;
  std::string config;
  std::string dataset;
};

absl::Status ValidateIngest(const IngestConfig& ingest) {
  ASSIGN_OR_RETURN(const LoadResult load, LoadDataset(ingest));
  std::cout << load.report.ToText();
  const auto violations = Validate(load.dataset);
  if (!violations.empty()) {
    return absl::FailedPreconditionError(FormatViolations(violations));
  }
  std::cout << "dataset '" << ingest.name << "' is valid ("
            << load.dataset.num_records() << " records)\n";
  return absl::OkStatus();
}

absl::Status Validate(const ValidateFlags& f) {
  if (!f.schema.empty()) {
    ASSIGN_OR_RETURN(const nlohmann::json doc, ReadJsonFile(f.schema));
    ASSIGN_OR_RETURN(const Schema schema, SchemaFromJson(doc));
    const auto violations = ValidateSchema(schema);
    if (!violations.empty()) {
      return absl::FailedPreconditionError(FormatViolations(violations));
    }
    std::cout << "schema is valid\n";
    return absl::OkStatus();
  }
  if (!f.ingest.empty()) {
    ASSIGN_OR_RETURN(const IngestConfig ingest, ReadIngestConfig(f.ingest));
    return ValidateIngest(ingest);
  }
  ExperimentConfig config;
  if (!f.config.empty()) {
    ASSIGN_OR_RETURN(config, ReadExperimentConfig(f.config));
  }
  if (!f.dataset.empty()) {
    config.dataset = f.dataset;
    config.ingest.reset();
  }
  ASSIGN_OR_RETURN(const auto prepared, PrepareDatasets(config));
  for (const PreparedDataset& p : prepared) {
    ASSIGN_OR_RETURN(const auto groups, ProjectGroups(p.data));
    size_t privileged = 0;
    for (int g : groups) privileged += g;
    std::cout << p.name << " / " << p.regime.name << ": "
              << p.data.num_records() << " records, " << privileged
              << " privileged\n";
  }
  std::cout << "config is valid\n";
  return absl::OkStatus();
}

struct MatrixFlags {
  std::string setting = "combLDP";
  double epsilon = 1.0;
  std::string domains;
  std::string config;
  std::string dataset;
  std::string split_policy = "k-based";
  int64_t cap = kDefaultMatrixCap;
  std::string out;
};

absl::Status Matrix(const MatrixFlags& f) {
  MechanismConfig mechanism;
  ASSIGN_OR_RETURN(mechanism.setting, ParseSetting(f.setting));
  mechanism.epsilon = f.epsilon;
  ASSIGN_OR_RETURN(mechanism.split_policy, ParseSplitPolicy(f.split_policy));
  Schema schema;
  if (!f.domains.empty()) {
    ASSIGN_OR_RETURN(const std::vector<int> sizes, ParseIntList(f.domains));
    schema = SensitiveOnlySchema(sizes);
  } else {
    ExperimentConfig config;
    if (!f.config.empty()) {
      ASSIGN_OR_RETURN(config, ReadExperimentConfig(f.config));
    }
    if (!f.dataset.empty()) {
      config.dataset = f.dataset;
      config.ingest.reset();
    }
    ASSIGN_OR_RETURN(const auto prepared, PrepareDatasets(config));
    schema = prepared.front().data.schema();
  }
  if (auto v = ValidateSchema(schema); !v.empty()) {
    return absl::InvalidArgumentError(FormatViolations(v));
  }
  ASSIGN_OR_RETURN(const ldpfair::Matrix m,
                   TransitionMatrix(mechanism, schema, f.cap));
  const std::string csv = MatrixToCsv(m);
  if (f.out.empty()) {
    std::cout << csv;
  } else {
    RETURN_IF_ERROR(WriteTextFile(f.out, csv));
  }
  std::cerr << "size " << m.size << ", max privacy ratio "
            << FormatDouble(MaxPrivacyRatio(m)) << "\n";
  return absl::OkStatus();
}

int Main(int argc, char** argv) {
  CLI::App app{"Fairness of models trained on locally private data"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment sweep");
  run_cmd->add_option("--config", run.config, "Experiment config (JSON)");
  run_cmd->add_option("--dataset", run.dataset,
                      "Preset (synthetic1, synthetic2) or ingest config path");
  run_cmd->add_option("--settings", run.settings,
                      "Comma list of noLDP,sLDP,combLDP,indLDP");
  run_cmd->add_option("--epsilons", run.epsilons, "Comma list of budgets");
  run_cmd->add_option("--regimes", run.regimes, "Comma list of regime names");
  run_cmd->add_option("--runs", run.runs, "Repetitions");
  run_cmd->add_option("--folds", run.folds, "Cross-validation folds");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--split-policy", run.split_policy,
                      "Budget split for indLDP: uniform or k-based");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--format", run.format, "csv or json");
  run_cmd->add_option("--records", run.records, "Synthetic dataset size");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all)");
  run_cmd->add_option("--trees", run.trees, "Trees per forest");
  run_cmd->add_flag("--per-fold", run.per_fold,
                    "Also write per-fold rows to rows.csv");

  ValidateFlags validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a schema, ingest config or dataset");
  validate_cmd->add_option("--schema", validate.schema, "Schema (JSON)");
  validate_cmd->add_option("--ingest", validate.ingest, "Ingest config (JSON)");
  validate_cmd->add_option("--config", validate.config,
                           "Experiment config (JSON)");
  validate_cmd->add_option("--dataset", validate.dataset,
                           "Preset or ingest config path");

  MatrixFlags matrix;
  auto* matrix_cmd =
      app.add_subcommand("matrix", "Dump a mechanism's transition matrix");
  matrix_cmd->add_option("--setting", matrix.setting, "sLDP, combLDP, ...")
      ->capture_default_str();
  matrix_cmd->add_option("--epsilon", matrix.epsilon, "Privacy budget")
      ->capture_default_str();
  matrix_cmd->add_option("--domains", matrix.domains,
                         "Comma list of sensitive domain sizes, protected first");
  matrix_cmd->add_option("--config", matrix.config, "Experiment config (JSON)");
  matrix_cmd->add_option("--dataset", matrix.dataset,
                         "Preset or ingest config path");
  matrix_cmd->add_option("--split-policy", matrix.split_policy,
                         "uniform or k-based")
      ->capture_default_str();
  matrix_cmd->add_option("--cap", matrix.cap, "Largest matrix size to build")
      ->capture_default_str();
  matrix_cmd->add_option("--out", matrix.out, "Write CSV here, not stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  absl::Status status;
  if (*run_cmd) {
    status = Run(run);
  } else if (*validate_cmd) {
    status = Validate(validate);
  } else {
    status = Matrix(matrix);
  }
  return status.ok() ? kOk : Fail(status);
}

}  // namespace
}  // namespace ldpfair

int main(int argc, char** argv) { return ldpfair::Main(argc, argv); }
