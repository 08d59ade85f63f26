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

#include "ldpfair/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpfair/fairness.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

absl::Status CheckExperimentConfig(const ExperimentConfig& config) {
  if (config.epsilons.empty()) {
    return absl::InvalidArgumentError("epsilon grid is empty");
  }
  for (double eps : config.epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("epsilon values must be positive and finite, got ",
                       eps));
    }
  }
  if (config.runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  if (config.folds < 2) {
    return absl::InvalidArgumentError("folds must be >= 2");
  }
  if (config.settings.empty()) {
    return absl::InvalidArgumentError("no settings selected");
  }
  std::set<Setting> unique(config.settings.begin(), config.settings.end());
  if (unique.size() != config.settings.size()) {
    return absl::InvalidArgumentError("settings list has duplicates");
  }
  if (config.threads < 0) {
    return absl::InvalidArgumentError("threads must be >= 0");
  }
  return CheckForestParams(config.forest);
}

absl::StatusOr<std::vector<PreparedDataset>> PrepareDatasets(
    const ExperimentConfig& config) {
  std::string name;
  ScoredData scored;
  std::vector<Regime> regimes;
  if (!config.ingest.has_value() && IsSyntheticPreset(config.dataset)) {
    name = config.dataset;
    SynthParams params;
    if (config.synthetic_params.has_value()) {
      params = *config.synthetic_params;
    } else {
      ASSIGN_OR_RETURN(params, PresetParams(config.dataset));
    }
    ASSIGN_OR_RETURN(scored,
                     GenerateSynthetic(params, config.synthetic_records,
                                       DeriveSeed(config.seed,
                                                  {kDataSeedStream})));
    regimes = SyntheticRegimes();
  } else {
    IngestConfig ingest;
    if (config.ingest.has_value()) {
      ingest = *config.ingest;
    } else {
      ASSIGN_OR_RETURN(ingest, ReadIngestConfig(config.dataset));
    }
    name = ingest.name;
    ASSIGN_OR_RETURN(ScoredLoad load, LoadScored(ingest));
    scored = std::move(load.data);
    regimes = ingest.regimes;
    if (regimes.empty()) regimes.push_back({"default", ingest.outcome_threshold});
  }

  if (!config.regimes.empty()) {
    std::vector<Regime> selected;
    for (const auto& wanted : config.regimes) {
      const auto it =
          std::find_if(regimes.begin(), regimes.end(),
                       [&](const Regime& r) { return r.name == wanted; });
      if (it == regimes.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat("dataset '", name, "' has no regime '", wanted, "'"));
      }
      selected.push_back(*it);
    }
    regimes = std::move(selected);
  }

  std::vector<PreparedDataset> out;
  for (const Regime& regime : regimes) {
    ASSIGN_OR_RETURN(Dataset data, BinarizeOutcome(scored, regime.threshold));
    if (auto violations = Validate(data); !violations.empty()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "dataset '", name, "' is malformed:\n",
          FormatViolations(violations)));
    }
    out.push_back({name, regime, std::move(data)});
  }
  return out;
}

std::vector<int> StratifiedFolds(std::span<const int> strata, int folds,
                                 Prng& rng) {
  std::map<int, std::vector<size_t>> by_stratum;
  for (size_t i = 0; i < strata.size(); ++i) {
    by_stratum[strata[i]].push_back(i);
  }
  std::vector<int> fold_of(strata.size(), 0);
  size_t next = 0;
  for (auto& [stratum, members] : by_stratum) {
    rng.Shuffle(members.begin(), members.end());
    for (size_t i : members) {
      fold_of[i] = static_cast<int>(next++ % static_cast<size_t>(folds));
    }
  }
  return fold_of;
}

uint64_t FoldSeed(uint64_t master, int run) {
  return DeriveSeed(master, {kFoldSeedStream, static_cast<uint64_t>(run)});
}

uint64_t ForestSeed(uint64_t master, int run, int fold) {
  return DeriveSeed(master, {kForestSeedStream, static_cast<uint64_t>(run),
                             static_cast<uint64_t>(fold)});
}

uint64_t MechanismSeed(uint64_t master, int run, int fold, Setting setting,
                       double epsilon) {
  return DeriveSeed(master,
                    {kMechanismSeedStream, static_cast<uint64_t>(run),
                     static_cast<uint64_t>(fold),
                     static_cast<uint64_t>(setting),
                     std::bit_cast<uint64_t>(epsilon)});
}

namespace {

struct FoldInputs {
  const PreparedDataset* input;
  const ExperimentConfig* config;
  std::span<const int> outcome;
  std::span<const int> groups;
};

void AppendRows(const FoldInputs& in, Setting setting, double epsilon,
                int run, int fold, const GroupedRates& rates,
                std::vector<ResultRow>& out) {
  auto row = [&](std::string_view group, std::string_view measure,
                 const Fraction& value) {
    out.push_back({in.input->name, in.input->regime.name, setting, epsilon,
                   run, fold, std::string(group), std::string(measure),
                   value.value()});
  };
  const std::pair<std::string_view, const GroupRates*> groups[] = {
      {kPrivilegedGroup, &rates.privileged},
      {kUnprivilegedGroup, &rates.unprivileged},
      {kOverallGroup, &rates.overall}};
  for (const auto& [name, r] : groups) {
    for (RateMeasure m : kAllRateMeasures) {
      row(name, RateMeasureName(m), RateOf(*r, m));
    }
  }
  // An empty group leaves every disparity undefined for this fold.
  const auto report = Disparity(rates.privileged, rates.unprivileged);
  for (Metric m : kAllMetrics) {
    row(kOverallGroup, MetricName(m),
        report.ok() ? (*report)[m] : Fraction::Undefined());
  }
}

absl::StatusOr<std::vector<ResultRow>> RunFold(
    const FoldInputs& in, int run, int fold, std::span<const int> fold_of,
    const FoldObserver& observer) {
  const ExperimentConfig& config = *in.config;
  const Dataset& data = in.input->data;

  std::vector<size_t> train_rows, test_rows;
  for (size_t i = 0; i < fold_of.size(); ++i) {
    (fold_of[i] == fold ? test_rows : train_rows).push_back(i);
  }
  if (train_rows.empty() || test_rows.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("fold ", fold, " of run ", run, " is empty"));
  }
  const Dataset train = data.Subset(train_rows);
  const Dataset test = data.Subset(test_rows);
  const uint64_t test_digest = test.Digest();
  std::vector<int> y_test, g_test;
  for (size_t i : test_rows) {
    y_test.push_back(in.outcome[i]);
    g_test.push_back(in.groups[i]);
  }

  const uint64_t forest_seed = ForestSeed(config.seed, run, fold);
  const ForestTrainer trainer(config.forest);
  std::vector<ResultRow> rows;

  auto evaluate = [&](const Dataset& fitted_on, Setting setting,
                      double epsilon) -> absl::StatusOr<GroupedRates> {
    ASSIGN_OR_RETURN(const auto model, trainer.Train(fitted_on, forest_seed));
    ASSIGN_OR_RETURN(const std::vector<int> pred, model->Predict(test));
    if (test.Digest() != test_digest) {
      return absl::InternalError("test fold changed during evaluation");
    }
    if (observer) {
      observer({run, fold, setting, epsilon, forest_seed, &fitted_on, &test,
                test_digest, train_rows, test_rows});
    }
    return ComputeGroupRates(y_test, pred, g_test);
  };

  for (Setting setting : config.settings) {
    if (setting == Setting::kNoLdp) {
      ASSIGN_OR_RETURN(const GroupedRates rates,
                       evaluate(train, setting, 0.0));
      for (double eps : config.epsilons) {
        AppendRows(in, setting, eps, run, fold, rates, rows);
      }
      continue;
    }
    for (double eps : config.epsilons) {
      Prng rng(MechanismSeed(config.seed, run, fold, setting, eps));
      const MechanismConfig mechanism{setting, eps, config.split_policy};
      ASSIGN_OR_RETURN(const Dataset obfuscated,
                       ObfuscateDataset(train, mechanism, rng));
      ASSIGN_OR_RETURN(const GroupedRates rates,
                       evaluate(obfuscated, setting, eps));
      AppendRows(in, setting, eps, run, fold, rates, rows);
    }
  }
  return rows;
}

}  // namespace

absl::StatusOr<std::vector<ResultRow>> RunOnDataset(
    const PreparedDataset& input, const ExperimentConfig& config,
    const FoldObserver& observer) {
  RETURN_IF_ERROR(CheckExperimentConfig(config));
  const Dataset& data = input.data;
  ASSIGN_OR_RETURN(const std::vector<int> groups, ProjectGroups(data));
  ASSIGN_OR_RETURN(const size_t outcome_idx, data.schema().OutcomeIndex());
  const auto outcome = data.column(outcome_idx);
  if (data.num_records() < static_cast<size_t>(config.folds)) {
    return absl::FailedPreconditionError(
        absl::StrCat("dataset has ", data.num_records(),
                     " records, fewer than ", config.folds, " folds"));
  }
  std::vector<int> strata(data.num_records());
  for (size_t i = 0; i < strata.size(); ++i) {
    strata[i] = 2 * outcome[i] + groups[i];
  }
  std::vector<std::vector<int>> fold_of(config.runs);
  for (int run = 0; run < config.runs; ++run) {
    Prng rng(FoldSeed(config.seed, run));
    fold_of[run] = StratifiedFolds(strata, config.folds, rng);
  }

  const FoldInputs inputs{&input, &config, outcome, groups};
  const size_t units = static_cast<size_t>(config.runs) * config.folds;
  std::vector<absl::StatusOr<std::vector<ResultRow>>> results(
      units, absl::UnknownError("not run"));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t u = next++; u < units; u = next++) {
      const int run = static_cast<int>(u / config.folds);
      const int fold = static_cast<int>(u % config.folds);
      results[u] = RunFold(inputs, run, fold, fold_of[run], observer);
    }
  };
  size_t threads = config.threads > 0
                       ? static_cast<size_t>(config.threads)
                       : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, units);
  // Observers are caller code; keep them on a single thread.
  if (observer) threads = 1;
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> rows;
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    rows.insert(rows.end(), std::make_move_iterator(r->begin()),
                std::make_move_iterator(r->end()));
  }
  return rows;
}

absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config) {
  RETURN_IF_ERROR(CheckExperimentConfig(config));
  ASSIGN_OR_RETURN(const std::vector<PreparedDataset> inputs,
                   PrepareDatasets(config));
  std::vector<ResultRow> rows;
  for (const PreparedDataset& input : inputs) {
    ASSIGN_OR_RETURN(std::vector<ResultRow> part, RunOnDataset(input, config));
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  return rows;
}

absl::StatusOr<std::vector<SummaryRow>> Aggregate(
    std::span<const ResultRow> rows) {
  std::map<std::string, size_t> index;
  std::vector<SummaryRow> summary;
  std::vector<std::vector<double>> values;
  for (const ResultRow& r : rows) {
    std::string key =
        absl::StrCat(r.dataset, "\x1f", r.regime, "\x1f", std::string(SettingName(r.setting)),
                     "\x1f", std::bit_cast<uint64_t>(r.epsilon), "\x1f",
                     r.group, "\x1f", r.measure);
    auto [it, inserted] = index.emplace(std::move(key), summary.size());
    if (inserted) {
      SummaryRow s;
      s.dataset = r.dataset;
      s.regime = r.regime;
      s.setting = std::string(SettingName(r.setting));
      s.epsilon = r.epsilon;
      s.group = r.group;
      s.measure = r.measure;
      summary.push_back(std::move(s));
      values.emplace_back();
    }
    SummaryRow& s = summary[it->second];
    if (r.value.has_value()) {
      values[it->second].push_back(*r.value);
      ++s.n_included;
    } else {
      ++s.n_excluded;
    }
  }
  for (size_t i = 0; i < summary.size(); ++i) {
    const auto& v = values[i];
    if (v.empty()) continue;
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    summary[i].mean = mean;
    summary[i].sd = std::sqrt(ss / static_cast<double>(v.size()));
  }
  return summary;
}

const SummaryRow* FindSummary(std::span<const SummaryRow> summary,
                              std::string_view regime, Setting setting,
                              double epsilon, std::string_view group,
                              std::string_view measure) {
  for (const SummaryRow& s : summary) {
    if (s.regime == regime && s.setting == SettingName(setting) &&
        s.epsilon == epsilon && s.group == group && s.measure == measure) {
      return &s;
    }
  }
  return nullptr;
}

}  // namespace ldpfair
