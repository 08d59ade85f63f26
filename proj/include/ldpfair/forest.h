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

#ifndef LDPFAIR_FOREST_H_
#define LDPFAIR_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"
#include "ldpfair/random.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Gini impurity 1 - sum_i (c_i / n)^2 of a two-class node. Fails when both
// counts are zero.
absl::StatusOr<double> Gini(double negatives, double positives);

struct ForestParams {
  int num_trees = 100;
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
  // Features tried per split; 0 = ceil(sqrt(feature count)).
  int features_per_split = 0;
  bool bootstrap = true;
  uint64_t seed = 0;
};

absl::Status CheckForestParams(const ForestParams& params);

// One-hot indicator over (attribute, category). Only indicators that vary
// in the training data are kept, so a constant attribute contributes no
// features at all.
struct OneHotFeature {
  size_t attribute = 0;  // position in RandomForest::feature_attributes()
  int category = 0;
};

// Binary decision tree over one-hot indicators. Node 0 is the root.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  int if_zero = -1;  // child when the indicator is 0
  int if_one = -1;   // child when the indicator is 1
  int label = 0;     // leaf label; ties resolve to 0
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  int Predict(std::span<const uint8_t> indicators) const;
  int depth() const;
};

// Binary classifier interface; predictions are in {0, 1}.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual absl::StatusOr<std::vector<int>> Predict(
      const Dataset& records) const = 0;
};

class Trainer {
 public:
  virtual ~Trainer() = default;
  // `seed` overrides any seed in the trainer's own parameters.
  virtual absl::StatusOr<std::unique_ptr<Classifier>> Train(
      const Dataset& train, uint64_t seed) const = 0;
};

// Bagged CART trees with Gini splits and a majority vote.
class RandomForest : public Classifier {
 public:
  struct FeatureAttribute {
    std::string name;
    int domain_size = 0;
  };

  // Trains on every non-outcome attribute. Requires a non-empty dataset
  // with a binary outcome and at least one non-outcome attribute.
  static absl::StatusOr<RandomForest> Fit(const Dataset& train,
                                          const ForestParams& params);

  // Majority vote over trees; a tied vote predicts 0. `records` must carry
  // the training feature attributes (same names and domain sizes); an
  // outcome column, if present, is ignored.
  absl::StatusOr<std::vector<int>> Predict(
      const Dataset& records) const override;

  const ForestParams& params() const { return params_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<OneHotFeature>& features() const { return features_; }
  const std::vector<FeatureAttribute>& feature_attributes() const {
    return attributes_;
  }
  // Set when the training outcome had a single class; every tree is then a
  // constant leaf.
  bool degenerate() const { return degenerate_; }
  int constant_label() const { return constant_label_; }

  // Debug dump; the layout is not a stable format.
  nlohmann::json ToJson() const;

 private:
  ForestParams params_;
  std::vector<FeatureAttribute> attributes_;
  std::vector<OneHotFeature> features_;
  std::vector<DecisionTree> trees_;
  bool degenerate_ = false;
  int constant_label_ = 0;
};

class ForestTrainer : public Trainer {
 public:
  explicit ForestTrainer(ForestParams params) : params_(params) {}

  absl::StatusOr<std::unique_ptr<Classifier>> Train(
      const Dataset& train, uint64_t seed) const override;

 private:
  ForestParams params_;
};

}  // namespace ldpfair

#endif  // LDPFAIR_FOREST_H_
