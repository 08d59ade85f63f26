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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "ldpfair/ingest.h"
#include "test_util.h"

namespace ldpfair {
namespace {

namespace fs = std::filesystem;

fs::path WriteFile(const std::string& name, const std::string& contents) {
  const fs::path path = fs::path(::testing::TempDir()) / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path;
}

// race (protected), sex (sensitive), age (binned), score -> Y.
IngestConfig ToyConfig(const fs::path& path) {
  IngestConfig config;
  config.name = "toy";
  config.path = path;
  config.columns = {
      {.column = "race",
       .attribute = "race",
       .role = Role::kProtected,
       .categories = {"black", "white"}},
      {.column = "sex",
       .attribute = "sex",
       .role = Role::kSensitive,
       .categories = {"f", "m"}},
      {.column = "age",
       .attribute = "age",
       .role = Role::kSensitive,
       .edges = {25, 45}},
  };
  config.outcome_column = "score";
  config.outcome_threshold = ThresholdSpec::Absolute(3);
  return config;
}

std::vector<int> Column(const Dataset& d, const std::string& name) {
  const auto idx = d.schema().Find(name);
  EXPECT_TRUE(idx.has_value()) << name;
  const auto col = d.column(*idx);
  return {col.begin(), col.end()};
}

TEST(IngestTest, FilteredRowIsDroppedAndCounted) {
  const auto path = WriteFile("filter.csv",
                              "race,sex,age,score\n"
                              "black,f,30,5\n"
                              "asian,m,40,2\n"
                              "white,m,20,4\n");
  IngestConfig config = ToyConfig(path);
  config.filters = {{.column = "race",
                     .op = FilterSpec::Op::kIn,
                     .values = {"black", "white"}}};
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(config));
  EXPECT_EQ(load.dataset.num_records(), 2u);
  EXPECT_EQ(load.report.records_in, 3u);
  EXPECT_EQ(load.report.records_out, 2u);
  EXPECT_EQ(load.report.filtered, 1u);
  EXPECT_EQ(load.report.errored, 0u);
  EXPECT_TRUE(Validate(load.dataset).empty());
  EXPECT_EQ(Column(load.dataset, "race"), (std::vector<int>{0, 1}));
  EXPECT_EQ(Column(load.dataset, "Y"), (std::vector<int>{1, 1}));
}

TEST(IngestTest, BinsAreLeftOpenRightClosed) {
  const auto path = WriteFile("bins.csv",
                              "race,sex,age,score\n"
                              "black,f,18,1\n"
                              "black,f,25,1\n"
                              "black,f,25.5,1\n"
                              "black,f,45,1\n"
                              "black,f,46,1\n");
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(ToyConfig(path)));
  EXPECT_EQ(Column(load.dataset, "age"), (std::vector<int>{0, 0, 1, 1, 2}));
  const auto& age = load.dataset.schema().attributes[2];
  EXPECT_EQ(age.domain.size(), 3u);
}

TEST(IngestTest, BucketOfMatchesRule) {
  const std::vector<double> edges = {25, 45};
  EXPECT_EQ(BucketOf(-1e9, edges), 0u);
  EXPECT_EQ(BucketOf(25, edges), 0u);
  EXPECT_EQ(BucketOf(std::nextafter(25.0, 26.0), edges), 1u);
  EXPECT_EQ(BucketOf(45, edges), 1u);
  EXPECT_EQ(BucketOf(45.001, edges), 2u);
}

TEST(IngestTest, IncomeThresholdIsStrict) {
  const auto path = WriteFile("income.csv",
                              "race,sex,age,income\n"
                              "black,f,30,49999\n"
                              "black,f,30,50000\n"
                              "white,m,30,50000.01\n"
                              "white,m,30,90000\n");
  IngestConfig config = ToyConfig(path);
  config.outcome_column = "income";
  config.outcome_threshold = ThresholdSpec::Absolute(50000);
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(config));
  EXPECT_EQ(Column(load.dataset, "Y"), (std::vector<int>{0, 0, 1, 1}));
}

TEST(IngestTest, RowErrorsAreCollectedAndConserved) {
  const auto path = WriteFile("errors.csv",
                              "race,sex,age,score\n"
                              "black,f,30,5\n"
                              "black,x,30,5\n"      // unknown category
                              "white,m,old,5\n"     // malformed number
                              "white,m,30,high\n"   // malformed outcome
                              "white,m,30\n"        // short row
                              "hispanic,m,30,1\n"   // filtered
                              "\n"
                              "white,f,60,2\n");
  IngestConfig config = ToyConfig(path);
  config.filters = {{.column = "race",
                     .op = FilterSpec::Op::kNotIn,
                     .values = {"hispanic"}}};
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(config));
  const LoadReport& r = load.report;
  EXPECT_EQ(r.records_in, 7u);
  EXPECT_EQ(r.records_out, 2u);
  EXPECT_EQ(r.filtered, 1u);
  EXPECT_EQ(r.errored, 4u);
  EXPECT_EQ(r.records_in, r.records_out + r.filtered + r.errored);
  ASSERT_EQ(r.errors.size(), 4u);
  EXPECT_EQ(r.errors[0].line, 3u);
  EXPECT_EQ(r.errors[0].column, "sex");
  EXPECT_EQ(r.errors[1].column, "age");
  EXPECT_EQ(r.errors[2].column, "score");
  EXPECT_NE(r.ToText().find("errored: 4"), std::string::npos);
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j.at("records_in"), 7);
  EXPECT_EQ(j.at("errors").size(), 4u);
}

TEST(IngestTest, ErrorListIsCapped) {
  std::string csv = "race,sex,age,score\n";
  for (int i = 0; i < 250; ++i) csv += "purple,f,30,1\n";
  csv += "black,f,30,1\n";
  ASSERT_OK_AND_ASSIGN(const LoadResult load,
                       LoadDataset(ToyConfig(WriteFile("cap.csv", csv))));
  EXPECT_EQ(load.report.errored, 250u);
  EXPECT_EQ(load.report.errors.size(), LoadReport::kMaxErrors);
  EXPECT_EQ(load.dataset.num_records(), 1u);
}

TEST(IngestTest, MergesApplyBeforeAllowList) {
  const auto path = WriteFile("merge.csv",
                              "race,sex,age,score\n"
                              "Black,Female,30,5\n"
                              "white,Male,30,5\n");
  IngestConfig config = ToyConfig(path);
  config.columns[0].merges = {{"Black", "black"}};
  config.columns[1].merges = {{"Female", "f"}, {"Male", "m"}};
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(config));
  EXPECT_EQ(load.report.errored, 0u);
  EXPECT_EQ(Column(load.dataset, "sex"), (std::vector<int>{0, 1}));
}

TEST(IngestTest, QuotedFieldsAndWhitespace) {
  const auto path = WriteFile("quoted.csv",
                              " race , sex,age,score\r\n"
                              "\"black\", f ,\"30\",5\r\n"
                              "white,\"m\",31,\"2\"\r\n");
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(ToyConfig(path)));
  EXPECT_EQ(load.report.errored, 0u);
  EXPECT_EQ(load.dataset.num_records(), 2u);
  EXPECT_EQ(SplitCsvLine(R"(a,"b,c","d""e",)"),
            (std::vector<std::string>{"a", "b,c", "d\"e", ""}));
}

TEST(IngestTest, BetweenFilterIsInclusive) {
  const auto path = WriteFile("between.csv",
                              "race,sex,age,score,days\n"
                              "black,f,30,5,-30\n"
                              "black,f,30,5,31\n"
                              "white,m,30,5,30\n"
                              "white,m,30,5,-31\n");
  IngestConfig config = ToyConfig(path);
  config.filters = {{.column = "days",
                     .op = FilterSpec::Op::kBetween,
                     .low = -30,
                     .high = 30}};
  ASSERT_OK_AND_ASSIGN(const LoadResult load, LoadDataset(config));
  EXPECT_EQ(load.dataset.num_records(), 2u);
  EXPECT_EQ(load.report.filtered, 2u);
}

TEST(IngestTest, LoadingTwiceIsIdentical) {
  const auto path = WriteFile("twice.csv",
                              "race,sex,age,score\n"
                              "black,f,30,5\n"
                              "white,m,50,1\n"
                              "white,f,20,3\n");
  ASSERT_OK_AND_ASSIGN(const LoadResult a, LoadDataset(ToyConfig(path)));
  ASSERT_OK_AND_ASSIGN(const LoadResult b, LoadDataset(ToyConfig(path)));
  EXPECT_EQ(a.dataset.Digest(), b.dataset.Digest());
  EXPECT_EQ(SchemaToJson(a.dataset.schema()), SchemaToJson(b.dataset.schema()));
}

TEST(IngestTest, FatalErrors) {
  EXPECT_EQ(LoadDataset(ToyConfig("/nonexistent/file.csv")).status().code(),
            absl::StatusCode::kNotFound);
  const auto path = WriteFile("noscore.csv", "race,sex,age\nblack,f,30\n");
  EXPECT_FALSE(LoadDataset(ToyConfig(path)).ok());
  const auto empty = WriteFile("empty.csv", "");
  EXPECT_FALSE(LoadDataset(ToyConfig(empty)).ok());
}

TEST(IngestTest, ConfigChecks) {
  IngestConfig config = ToyConfig("x.csv");
  EXPECT_OK(CheckIngestConfig(config));
  config.columns[2].edges = {45, 25};
  EXPECT_FALSE(CheckIngestConfig(config).ok());
  config = ToyConfig("x.csv");
  config.columns[2].edges = {25, 25};
  EXPECT_FALSE(CheckIngestConfig(config).ok());
  config = ToyConfig("x.csv");
  config.columns[0].categories.clear();
  EXPECT_FALSE(CheckIngestConfig(config).ok());
}

TEST(IngestTest, JsonConfigResolvesRelativePath) {
  const auto doc = nlohmann::json::parse(R"({
    "name": "toy",
    "path": "data/toy.csv",
    "privileged_index": 0,
    "columns": [
      {"column": "race", "role": "protected", "categories": ["black", "white"]},
      {"column": "sex", "role": "sensitive", "categories": ["f", "m"],
       "merge": {"Female": "f"}},
      {"column": "age", "role": "sensitive", "edges": [25, 45],
       "labels": ["young", "mid", "old"]}
    ],
    "outcome": {"column": "score", "threshold": 3},
    "regimes": [
      {"name": "Q1", "threshold": 1},
      {"name": "Q2", "threshold": {"mode": "quantile", "value": 0.5}}
    ],
    "filters": [{"column": "race", "op": "in", "values": ["black", "white"]}]
  })");
  ASSERT_OK_AND_ASSIGN(const IngestConfig c, IngestConfigFromJson(doc, "/base"));
  EXPECT_EQ(c.path, fs::path("/base/data/toy.csv"));
  EXPECT_EQ(c.privileged_index, 0);
  ASSERT_EQ(c.columns.size(), 3u);
  EXPECT_EQ(c.columns[1].merges.size(), 1u);
  EXPECT_EQ(c.columns[2].bin_labels.size(), 3u);
  EXPECT_EQ(c.outcome_threshold.mode, ThresholdSpec::Mode::kAbsolute);
  EXPECT_EQ(c.outcome_threshold.value, 3.0);
  ASSERT_EQ(c.regimes.size(), 2u);
  EXPECT_EQ(c.regimes[1].threshold.mode, ThresholdSpec::Mode::kQuantile);
  EXPECT_FALSE(IngestConfigFromJson(nlohmann::json::parse(R"({"path": 3})"), "/")
                   .ok());
}

}  // namespace
}  // namespace ldpfair
