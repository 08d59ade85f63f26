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

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>
#include "ldpfair/experiment.h"
#include "ldpfair/random.h"
#include "test_util.h"

namespace ldpfair {
namespace {

using testing::Attr;

ExperimentConfig SmallConfig() {
  ExperimentConfig config;
  config.synthetic_records = 600;
  config.regimes = {"Q2"};
  config.epsilons = {2.0, 0.5};
  config.runs = 2;
  config.folds = 3;
  config.seed = 42;
  config.forest.num_trees = 10;
  config.threads = 1;
  return config;
}

PreparedDataset SmallInput(const ExperimentConfig& config) {
  auto prepared = PrepareDatasets(config);
  EXPECT_TRUE(prepared.ok()) << prepared.status();
  return prepared->front();
}

TEST(ExperimentConfigTest, Checks) {
  EXPECT_OK(CheckExperimentConfig(ExperimentConfig{}));
  ExperimentConfig c;
  c.epsilons = {1.0, 0.0};
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.epsilons = {};
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.epsilons = {-1.0};
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.runs = 0;
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.folds = 1;
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.settings = {};
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.settings = {Setting::kNoLdp, Setting::kNoLdp};
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
  c = {};
  c.forest.num_trees = 0;
  EXPECT_FALSE(CheckExperimentConfig(c).ok());
}

TEST(ExperimentConfigTest, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.epsilons, (std::vector<double>{16, 8, 5, 3, 2, 1, 0.5, 0.1}));
  EXPECT_EQ(c.runs, 20);
  EXPECT_EQ(c.folds, 10);
  EXPECT_EQ(c.settings.size(), 4u);
  EXPECT_EQ(c.split_policy, SplitPolicy::kKBased);
}

TEST(StratifiedFoldsTest, BalancedPerStratum) {
  Prng gen(1);
  std::vector<int> strata(1003);
  for (int& s : strata) s = static_cast<int>(gen.UniformInt(4));
  Prng rng(5);
  const std::vector<int> folds = StratifiedFolds(strata, 10, rng);
  std::map<std::pair<int, int>, int> count;
  std::vector<int> size(10, 0);
  for (size_t i = 0; i < strata.size(); ++i) {
    ASSERT_GE(folds[i], 0);
    ASSERT_LT(folds[i], 10);
    ++count[{strata[i], folds[i]}];
    ++size[folds[i]];
  }
  for (int s = 0; s < 4; ++s) {
    int lo = 1 << 30, hi = 0;
    for (int f = 0; f < 10; ++f) {
      lo = std::min(lo, count[{s, f}]);
      hi = std::max(hi, count[{s, f}]);
    }
    EXPECT_LE(hi - lo, 1) << "stratum " << s;
  }
  const auto [lo, hi] = std::minmax_element(size.begin(), size.end());
  EXPECT_LE(*hi - *lo, 1);
}

TEST(StratifiedFoldsTest, DeterministicAndSeedDependent) {
  std::vector<int> strata(200);
  for (size_t i = 0; i < strata.size(); ++i) strata[i] = i % 3;
  Prng a(7), b(7), c(8);
  EXPECT_EQ(StratifiedFolds(strata, 5, a), StratifiedFolds(strata, 5, b));
  Prng d(7);
  EXPECT_NE(StratifiedFolds(strata, 5, d), StratifiedFolds(strata, 5, c));
}

TEST(SeedTest, StreamsAreDistinctAndStable) {
  std::set<uint64_t> seen;
  for (int run = 0; run < 5; ++run) {
    seen.insert(FoldSeed(1, run));
    for (int fold = 0; fold < 10; ++fold) {
      seen.insert(ForestSeed(1, run, fold));
      for (Setting s : kAllSettings) {
        for (double eps : {16.0, 0.1}) {
          seen.insert(MechanismSeed(1, run, fold, s, eps));
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), 5u + 50u + 400u);
  EXPECT_EQ(FoldSeed(1, 3), FoldSeed(1, 3));
  EXPECT_NE(FoldSeed(1, 3), FoldSeed(2, 3));
  static_assert(DeriveSeed(1, {2, 3}) == DeriveSeed(1, {2, 3}));
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(1, {3, 2}));
}

TEST(PrepareDatasetsTest, SyntheticRegimes) {
  ExperimentConfig config = SmallConfig();
  config.regimes = {};
  ASSERT_OK_AND_ASSIGN(const auto all, PrepareDatasets(config));
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].regime.name, "Q1");
  EXPECT_EQ(all[2].regime.name, "Q3");
  for (const auto& p : all) {
    EXPECT_EQ(p.name, "synthetic1");
    EXPECT_EQ(p.data.num_records(), 600u);
    EXPECT_TRUE(Validate(p.data).empty());
  }
  // Features are shared across regimes; only Y changes.
  EXPECT_TRUE(std::equal(all[0].data.column(0).begin(),
                         all[0].data.column(0).end(),
                         all[2].data.column(0).begin()));

  config.regimes = {"Q3", "Q1"};
  ASSERT_OK_AND_ASSIGN(const auto picked, PrepareDatasets(config));
  ASSERT_EQ(picked.size(), 2u);
  EXPECT_EQ(picked[0].regime.name, "Q3");

  config.regimes = {"Q9"};
  EXPECT_FALSE(PrepareDatasets(config).ok());
  config.regimes = {};
  config.dataset = "/nonexistent/ingest.json";
  EXPECT_FALSE(PrepareDatasets(config).ok());
}

class RunTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    config_ = new ExperimentConfig(SmallConfig());
    input_ = new PreparedDataset(SmallInput(*config_));
    traces_ = new std::vector<Trace>();
    auto rows = RunOnDataset(*input_, *config_, [](const FoldTrace& t) {
      traces_->push_back(Capture(t));
    });
    ASSERT_TRUE(rows.ok()) << rows.status();
    rows_ = new std::vector<ResultRow>(*std::move(rows));
  }
  static void TearDownTestSuite() {
    delete config_;
    delete input_;
    delete traces_;
    delete rows_;
  }

  struct Trace {
    FoldTrace trace;
    uint64_t train_digest;
    uint64_t test_digest_after;
    std::vector<size_t> train_rows;
    std::vector<size_t> test_rows;
    std::vector<std::vector<int>> train_columns;
  };
  static Trace Capture(const FoldTrace& t) {
    Trace c{t, t.train->Digest(), t.test->Digest(),
            {t.train_rows.begin(), t.train_rows.end()},
            {t.test_rows.begin(), t.test_rows.end()},
            {}};
    for (size_t a = 0; a < t.train->num_columns(); ++a) {
      c.train_columns.emplace_back(t.train->column(a).begin(),
                                   t.train->column(a).end());
    }
    return c;
  }

  static ExperimentConfig* config_;
  static PreparedDataset* input_;
  static std::vector<Trace>* traces_;
  static std::vector<ResultRow>* rows_;
};
ExperimentConfig* RunTest::config_ = nullptr;
PreparedDataset* RunTest::input_ = nullptr;
std::vector<RunTest::Trace>* RunTest::traces_ = nullptr;
std::vector<ResultRow>* RunTest::rows_ = nullptr;

TEST_F(RunTest, OneRowPerCellWithUniqueKeys) {
  // runs * folds * settings * eps * (3 groups * 5 rates + 5 disparities)
  EXPECT_EQ(rows_->size(), 2u * 3 * 4 * 2 * 20);
  std::set<std::tuple<Setting, double, int, int, std::string, std::string>>
      keys;
  for (const ResultRow& r : *rows_) {
    EXPECT_TRUE(keys.insert({r.setting, r.epsilon, r.run, r.fold, r.group,
                             r.measure})
                    .second);
    EXPECT_EQ(r.dataset, "synthetic1");
    EXPECT_EQ(r.regime, "Q2");
  }
}

TEST_F(RunTest, NoLdpIsReplicatedAcrossEpsilon) {
  std::map<std::tuple<int, int, std::string, std::string>,
           std::set<std::optional<double>>>
      values;
  for (const ResultRow& r : *rows_) {
    if (r.setting != Setting::kNoLdp) continue;
    values[{r.run, r.fold, r.group, r.measure}].insert(r.value);
  }
  EXPECT_EQ(values.size(), 2u * 3 * 20);
  for (const auto& [key, v] : values) EXPECT_EQ(v.size(), 1u);
}

TEST_F(RunTest, TestFoldIsNeverRandomized) {
  // noLDP once, three settings times two budgets.
  ASSERT_EQ(traces_->size(), 2u * 3 * (1 + 3 * 2));
  const Dataset& original = input_->data;
  for (const Trace& t : *traces_) {
    const Dataset test = original.Subset(t.test_rows);
    EXPECT_EQ(t.trace.test_digest_before, test.Digest());
    EXPECT_EQ(t.test_digest_after, test.Digest());
    std::vector<bool> seen(original.num_records(), false);
    for (size_t r : t.train_rows) seen[r] = true;
    for (size_t r : t.test_rows) {
      EXPECT_FALSE(seen[r]);
      seen[r] = true;
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
}

TEST_F(RunTest, TrainingPortionIsRandomizedPerSetting) {
  const Dataset& original = input_->data;
  const size_t outcome = *original.schema().OutcomeIndex();
  for (const Trace& t : *traces_) {
    const Dataset train = original.Subset(t.train_rows);
    // Outcome never changes.
    EXPECT_TRUE(std::equal(t.train_columns[outcome].begin(),
                           t.train_columns[outcome].end(),
                           train.column(outcome).begin()));
    const bool a_same = std::equal(t.train_columns[0].begin(),
                                   t.train_columns[0].end(),
                                   train.column(0).begin());
    const bool m_same = std::equal(t.train_columns[2].begin(),
                                   t.train_columns[2].end(),
                                   train.column(2).begin());
    switch (t.trace.setting) {
      case Setting::kNoLdp:
        EXPECT_EQ(t.train_digest, train.Digest());
        break;
      case Setting::kSingleLdp:
        EXPECT_FALSE(a_same);
        EXPECT_TRUE(m_same);
        break;
      default:
        EXPECT_FALSE(a_same);
        EXPECT_FALSE(m_same);
    }
  }
}

TEST_F(RunTest, HyperParameterParityWithinFold) {
  std::map<std::pair<int, int>, std::set<uint64_t>> forest_seeds;
  std::map<std::pair<int, int>, std::set<std::vector<size_t>>> splits;
  for (const Trace& t : *traces_) {
    forest_seeds[{t.trace.run, t.trace.fold}].insert(t.trace.forest_seed);
    splits[{t.trace.run, t.trace.fold}].insert(t.test_rows);
  }
  EXPECT_EQ(forest_seeds.size(), 6u);
  for (const auto& [k, v] : forest_seeds) EXPECT_EQ(v.size(), 1u);
  for (const auto& [k, v] : splits) EXPECT_EQ(v.size(), 1u);
}

TEST_F(RunTest, FoldsAreRedrawnPerRun) {
  std::set<std::vector<size_t>> first_folds;
  for (const Trace& t : *traces_) {
    if (t.trace.fold == 0) first_folds.insert(t.test_rows);
  }
  EXPECT_EQ(first_folds.size(), 2u);
}

TEST_F(RunTest, DeterministicAcrossThreadCounts) {
  ExperimentConfig threaded = *config_;
  threaded.threads = 3;
  ASSERT_OK_AND_ASSIGN(const auto rows, RunOnDataset(*input_, threaded));
  ASSERT_EQ(rows.size(), rows_->size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].value, (*rows_)[i].value);
    EXPECT_EQ(rows[i].measure, (*rows_)[i].measure);
    EXPECT_EQ(rows[i].setting, (*rows_)[i].setting);
  }
}

TEST_F(RunTest, DisparitiesAreUnderOverall) {
  for (const ResultRow& r : *rows_) {
    const bool disparity = r.measure == "SD" || r.measure == "EOD" ||
                           r.measure == "PED" || r.measure == "OAD" ||
                           r.measure == "PRD";
    if (disparity) {
      EXPECT_EQ(r.group, kOverallGroup);
    }
    if (r.value.has_value()) {
      EXPECT_GE(*r.value, disparity ? -1.0 : 0.0);
      EXPECT_LE(*r.value, 1.0);
    }
  }
}

TEST(RunEdgeTest, EmptyProtectedGroupMarksFoldUndefined) {
  auto schema = std::make_shared<Schema>();
  schema->attributes = {Attr("A", {"0", "1"}, Role::kProtected),
                        Attr("X", {"a", "b"}, Role::kNonSensitive),
                        Attr("Y", {"0", "1"}, Role::kOutcome)};
  // One privileged record among 40: only one fold sees it in its test part.
  std::vector<int> a(40, 0), x(40), y(40);
  a[7] = 1;
  for (int i = 0; i < 40; ++i) {
    x[i] = i % 2;
    y[i] = (i / 2) % 2;
  }
  PreparedDataset input{"edge", {"all", ThresholdSpec::Absolute(0)},
                        Dataset(schema, {a, x, y})};
  ExperimentConfig config;
  config.settings = {Setting::kNoLdp, Setting::kSingleLdp};
  config.epsilons = {1.0};
  config.runs = 1;
  config.folds = 4;
  config.forest.num_trees = 5;
  ASSERT_OK_AND_ASSIGN(const auto rows, RunOnDataset(input, config));
  int undefined_sd = 0, defined_sd = 0;
  for (const ResultRow& r : rows) {
    if (r.measure != "SD") continue;
    (r.value.has_value() ? defined_sd : undefined_sd) += 1;
  }
  // Per setting: one fold has the privileged record, three do not.
  EXPECT_EQ(defined_sd, 2);
  EXPECT_EQ(undefined_sd, 6);
}

TEST(RunEdgeTest, TooFewRecordsIsAnError) {
  ExperimentConfig config = SmallConfig();
  config.synthetic_records = 2;
  config.folds = 3;
  config.regimes = {};
  // Two records cannot carry three folds (or a quantile split).
  EXPECT_FALSE(RunExperiment(config).ok());
}

TEST(RunEdgeTest, SingleLdpAtLargeBudgetTracksBaseline) {
  ExperimentConfig config;
  config.synthetic_records = 4000;
  config.regimes = {"Q2"};
  config.settings = {Setting::kNoLdp, Setting::kSingleLdp};
  config.epsilons = {16.0};
  config.runs = 2;
  config.folds = 5;
  config.forest.num_trees = 20;
  ASSERT_OK_AND_ASSIGN(const auto rows, RunExperiment(config));
  ASSERT_OK_AND_ASSIGN(const auto summary, Aggregate(rows));
  const SummaryRow* base = FindSummary(summary, "Q2", Setting::kNoLdp, 16.0,
                                       kOverallGroup, "SD");
  const SummaryRow* single = FindSummary(summary, "Q2", Setting::kSingleLdp,
                                         16.0, kOverallGroup, "SD");
  ASSERT_NE(base, nullptr);
  ASSERT_NE(single, nullptr);
  EXPECT_LE(std::abs(*single->mean - *base->mean), 0.03);
}

TEST(RunEdgeTest, CombinedWithOneSensitiveAttributeMatchesSingle) {
  // Only the protected attribute is sensitive: both settings apply the same
  // k-RR to it, so with a shared stream the outputs coincide exactly.
  auto schema = std::make_shared<Schema>();
  schema->attributes = {Attr("A", {"0", "1"}, Role::kProtected),
                        Attr("X", {"a", "b", "c"}, Role::kNonSensitive),
                        Attr("Y", {"0", "1"}, Role::kOutcome)};
  Prng gen(3);
  std::vector<std::vector<int>> cols(3, std::vector<int>(500));
  for (size_t i = 0; i < 500; ++i) {
    cols[0][i] = static_cast<int>(gen.UniformInt(2));
    cols[1][i] = static_cast<int>(gen.UniformInt(3));
    cols[2][i] = static_cast<int>(gen.UniformInt(2));
  }
  const Dataset data(schema, cols);
  for (double eps : {0.1, 1.0, 5.0}) {
    Prng a(11), b(11);
    ASSERT_OK_AND_ASSIGN(
        const Dataset single,
        ObfuscateDataset(data, {Setting::kSingleLdp, eps}, a));
    ASSERT_OK_AND_ASSIGN(
        const Dataset comb,
        ObfuscateDataset(data, {Setting::kCombinedLdp, eps}, b));
    EXPECT_EQ(single.Digest(), comb.Digest());
  }
}

ResultRow Row(std::string measure, std::optional<double> value, int run = 0) {
  ResultRow r;
  r.dataset = "d";
  r.regime = "Q2";
  r.setting = Setting::kCombinedLdp;
  r.epsilon = 1.0;
  r.run = run;
  r.group = std::string(kOverallGroup);
  r.measure = std::move(measure);
  r.value = value;
  return r;
}

TEST(AggregateTest, MeanAndPopulationSd) {
  const std::vector<ResultRow> rows = {Row("SD", 0.2), Row("SD", 0.4, 1)};
  ASSERT_OK_AND_ASSIGN(const auto s, Aggregate(rows));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(*s[0].mean, 0.3, 1e-15);
  EXPECT_NEAR(*s[0].sd, 0.1, 1e-15);
  EXPECT_EQ(s[0].n_included, 2u);
  EXPECT_EQ(s[0].n_excluded, 0u);
  EXPECT_EQ(s[0].setting, "combLDP");
}

TEST(AggregateTest, SingleRowHasZeroSd) {
  const std::vector<ResultRow> rows = {Row("SD", 0.7)};
  ASSERT_OK_AND_ASSIGN(const auto s, Aggregate(rows));
  EXPECT_EQ(*s[0].sd, 0.0);
  EXPECT_EQ(*s[0].mean, 0.7);
}

TEST(AggregateTest, UndefinedIsExcludedAndCounted) {
  const std::vector<ResultRow> rows = {Row("SD", 0.2),
                                       Row("SD", std::nullopt, 1),
                                       Row("EOD", std::nullopt),
                                       Row("EOD", std::nullopt, 1)};
  ASSERT_OK_AND_ASSIGN(const auto s, Aggregate(rows));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].measure, "SD");
  EXPECT_EQ(*s[0].mean, 0.2);
  EXPECT_EQ(s[0].n_included, 1u);
  EXPECT_EQ(s[0].n_excluded, 1u);
  EXPECT_EQ(s[1].measure, "EOD");
  EXPECT_FALSE(s[1].mean.has_value());
  EXPECT_FALSE(s[1].sd.has_value());
  EXPECT_EQ(s[1].n_excluded, 2u);
}

TEST(AggregateTest, KeysKeepFirstAppearanceOrder) {
  std::vector<ResultRow> rows = {Row("b", 1), Row("a", 1), Row("b", 0, 1)};
  rows[1].epsilon = 0.5;
  ASSERT_OK_AND_ASSIGN(const auto s, Aggregate(rows));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].measure, "b");
  EXPECT_EQ(s[1].measure, "a");
  EXPECT_NE(FindSummary(s, "Q2", Setting::kCombinedLdp, 0.5, kOverallGroup, "a"),
            nullptr);
  EXPECT_EQ(FindSummary(s, "Q2", Setting::kCombinedLdp, 1.0, kOverallGroup, "a"),
            nullptr);
}

}  // namespace
}  // namespace ldpfair
