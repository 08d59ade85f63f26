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

#include "ldpfair/forest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

absl::StatusOr<double> Gini(double negatives, double positives) {
  if (negatives < 0 || positives < 0) {
    return absl::InvalidArgumentError("label counts must be non-negative");
  }
  const double n = negatives + positives;
  if (n == 0) return absl::InvalidArgumentError("Gini of an empty node");
  const double f0 = negatives / n;
  const double f1 = positives / n;
  return 1.0 - (f0 * f0 + f1 * f1);
}

absl::Status CheckForestParams(const ForestParams& params) {
  if (params.num_trees < 1) {
    return absl::InvalidArgumentError("num_trees must be >= 1");
  }
  if (params.min_samples_split < 2) {
    return absl::InvalidArgumentError("min_samples_split must be >= 2");
  }
  if (params.max_depth < 0 || params.features_per_split < 0) {
    return absl::InvalidArgumentError(
        "max_depth and features_per_split must be >= 0");
  }
  return absl::OkStatus();
}

int DecisionTree::Predict(std::span<const uint8_t> indicators) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    const TreeNode& n = nodes[node];
    node = indicators[n.feature] ? n.if_one : n.if_zero;
  }
  return nodes[node].label;
}

int DecisionTree::depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (nodes[i].feature >= 0) {
      depth[nodes[i].if_zero] = depth[i] + 1;
      depth[nodes[i].if_one] = depth[i] + 1;
    }
  }
  return deepest;
}

namespace {

// Distinct indicator rows of the training set. Trees are grown on weighted
// patterns, which is equivalent to growing them on the bootstrap multiset.
struct PatternTable {
  size_t num_features = 0;
  std::vector<uint8_t> bits;       // row-major, patterns x features
  std::vector<int> pattern_of;     // per record

  size_t size() const {
    return num_features == 0 ? (pattern_of.empty() ? 0 : 1)
                             : bits.size() / num_features;
  }
  const uint8_t* row(size_t p) const { return bits.data() + p * num_features; }
};

class TreeGrower {
 public:
  TreeGrower(const PatternTable& table, const ForestParams& params,
             int max_features)
      : table_(table), params_(params), max_features_(max_features) {}

  // weights[2p + y] is the bootstrap multiplicity of label y in pattern p.
  DecisionTree Grow(const std::vector<double>& weights, Prng& rng) const {
    DecisionTree tree;
    struct Pending {
      int node;
      std::vector<int> patterns;
      int depth;
    };
    std::vector<int> all;
    for (size_t p = 0; p < table_.size(); ++p) {
      if (weights[2 * p] + weights[2 * p + 1] > 0) all.push_back(p);
    }
    tree.nodes.push_back({});
    std::vector<Pending> stack;
    stack.push_back({0, std::move(all), 0});
    std::vector<size_t> order(table_.num_features);

    while (!stack.empty()) {
      Pending work = std::move(stack.back());
      stack.pop_back();
      double w0 = 0, w1 = 0;
      for (int p : work.patterns) {
        w0 += weights[2 * p];
        w1 += weights[2 * p + 1];
      }
      tree.nodes[work.node].label = w1 > w0 ? 1 : 0;
      if (w0 == 0 || w1 == 0 || w0 + w1 < params_.min_samples_split ||
          (params_.max_depth > 0 && work.depth >= params_.max_depth)) {
        continue;
      }

      std::iota(order.begin(), order.end(), size_t{0});
      rng.Shuffle(order.begin(), order.end());
      int best = -1;
      double best_score = -std::numeric_limits<double>::infinity();
      int visited = 0;
      for (size_t f : order) {
        double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
        for (int p : work.patterns) {
          if (table_.row(p)[f]) {
            r0 += weights[2 * p];
            r1 += weights[2 * p + 1];
          } else {
            l0 += weights[2 * p];
            l1 += weights[2 * p + 1];
          }
        }
        const double nl = l0 + l1;
        const double nr = r0 + r1;
        if (nl == 0 || nr == 0) continue;  // constant here; not counted
        // Minimizing weighted child Gini == maximizing this proxy.
        const double score = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / nr;
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(f);
        }
        if (++visited >= max_features_) break;
      }
      if (best < 0) continue;

      std::vector<int> zeros, ones;
      for (int p : work.patterns) {
        (table_.row(p)[best] ? ones : zeros).push_back(p);
      }
      const int if_zero = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({});
      const int if_one = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({});
      TreeNode& node = tree.nodes[work.node];
      node.feature = best;
      node.if_zero = if_zero;
      node.if_one = if_one;
      stack.push_back({if_one, std::move(ones), work.depth + 1});
      stack.push_back({if_zero, std::move(zeros), work.depth + 1});
    }
    return tree;
  }

 private:
  const PatternTable& table_;
  const ForestParams& params_;
  int max_features_;
};

}  // namespace

absl::StatusOr<RandomForest> RandomForest::Fit(const Dataset& train,
                                               const ForestParams& params) {
  RETURN_IF_ERROR(CheckForestParams(params));
  const Schema& schema = train.schema();
  const size_t n = train.num_records();
  if (n == 0) return absl::FailedPreconditionError("empty training set");
  ASSIGN_OR_RETURN(const size_t outcome, schema.OutcomeIndex());
  if (schema.attributes[outcome].domain_size() != 2) {
    return absl::FailedPreconditionError("outcome must be binary");
  }
  const std::vector<size_t> feature_attrs = schema.FeatureIndices();
  if (feature_attrs.empty()) {
    return absl::FailedPreconditionError("training set has no features");
  }
  const auto labels = train.column(outcome);

  RandomForest forest;
  forest.params_ = params;
  for (size_t a : feature_attrs) {
    forest.attributes_.push_back(
        {schema.attributes[a].name, schema.attributes[a].domain_size()});
  }
  // Keep only indicators that vary over the training records.
  for (size_t i = 0; i < feature_attrs.size(); ++i) {
    const auto col = train.column(feature_attrs[i]);
    std::vector<size_t> counts(forest.attributes_[i].domain_size, 0);
    for (int v : col) {
      if (v < 0 || v >= forest.attributes_[i].domain_size) {
        return absl::OutOfRangeError(absl::StrCat(
            "value ", v, " outside the domain of '",
            forest.attributes_[i].name, "'"));
      }
      ++counts[v];
    }
    for (size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] > 0 && counts[c] < n) {
        forest.features_.push_back({i, static_cast<int>(c)});
      }
    }
  }

  size_t positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) {
      return absl::OutOfRangeError("outcome values must be 0 or 1");
    }
    positives += static_cast<size_t>(y);
  }
  if (positives == 0 || positives == n) {
    forest.degenerate_ = true;
    forest.constant_label_ = positives == n ? 1 : 0;
    DecisionTree leaf;
    leaf.nodes.push_back({-1, -1, -1, forest.constant_label_});
    forest.trees_.assign(params.num_trees, leaf);
    return forest;
  }

  PatternTable table;
  table.num_features = forest.features_.size();
  table.pattern_of.resize(n);
  {
    std::unordered_map<std::string, int> index;
    std::string key(table.num_features, '\0');
    for (size_t r = 0; r < n; ++r) {
      for (size_t f = 0; f < table.num_features; ++f) {
        const OneHotFeature& feat = forest.features_[f];
        key[f] = train.at(r, feature_attrs[feat.attribute]) == feat.category;
      }
      const auto [it, inserted] =
          index.emplace(key, static_cast<int>(index.size()));
      if (inserted) table.bits.insert(table.bits.end(), key.begin(), key.end());
      table.pattern_of[r] = it->second;
    }
  }

  const int num_features = static_cast<int>(table.num_features);
  int max_features =
      params.features_per_split > 0
          ? params.features_per_split
          : static_cast<int>(std::ceil(std::sqrt(double(num_features))));
  max_features = std::clamp(max_features, 1, std::max(num_features, 1));
  const TreeGrower grower(table, forest.params_, max_features);

  std::vector<double> weights(2 * table.size());
  forest.trees_.reserve(params.num_trees);
  for (int t = 0; t < params.num_trees; ++t) {
    Prng rng(DeriveSeed(params.seed, {static_cast<uint64_t>(t)}));
    std::fill(weights.begin(), weights.end(), 0.0);
    if (params.bootstrap) {
      for (size_t i = 0; i < n; ++i) {
        const size_t r = rng.UniformInt(n);
        weights[2 * table.pattern_of[r] + labels[r]] += 1.0;
      }
    } else {
      for (size_t r = 0; r < n; ++r) {
        weights[2 * table.pattern_of[r] + labels[r]] += 1.0;
      }
    }
    forest.trees_.push_back(grower.Grow(weights, rng));
  }
  return forest;
}

absl::StatusOr<std::vector<int>> RandomForest::Predict(
    const Dataset& records) const {
  const Schema& schema = records.schema();
  std::vector<size_t> source;
  for (const auto& attr : attributes_) {
    const auto idx = schema.Find(attr.name);
    if (!idx.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("records lack feature attribute '", attr.name, "'"));
    }
    if (schema.attributes[*idx].domain_size() != attr.domain_size) {
      return absl::InvalidArgumentError(absl::StrCat(
          "feature '", attr.name, "' has domain size ",
          schema.attributes[*idx].domain_size(), ", model expects ",
          attr.domain_size));
    }
    source.push_back(*idx);
  }

  const size_t n = records.num_records();
  std::vector<int> out(n);
  if (degenerate_) {
    std::fill(out.begin(), out.end(), constant_label_);
    return out;
  }
  std::unordered_map<std::string, int> cache;
  std::string key(features_.size(), '\0');
  std::span<const uint8_t> bits(reinterpret_cast<const uint8_t*>(key.data()),
                                key.size());
  for (size_t r = 0; r < n; ++r) {
    for (size_t f = 0; f < features_.size(); ++f) {
      key[f] = records.at(r, source[features_[f].attribute]) ==
               features_[f].category;
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      size_t ones = 0;
      for (const DecisionTree& tree : trees_) {
        ones += static_cast<size_t>(tree.Predict(bits));
      }
      it = cache.emplace(key, 2 * ones > trees_.size() ? 1 : 0).first;
    }
    out[r] = it->second;
  }
  return out;
}

nlohmann::json RandomForest::ToJson() const {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& a : attributes_) {
    attrs.push_back({{"name", a.name}, {"domain_size", a.domain_size}});
  }
  nlohmann::json feats = nlohmann::json::array();
  for (const auto& f : features_) {
    feats.push_back({{"attribute", attributes_[f.attribute].name},
                     {"category", f.category}});
  }
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : t.nodes) {
      if (node.feature < 0) {
        nodes.push_back({{"leaf", node.label}});
      } else {
        nodes.push_back({{"feature", node.feature},
                         {"if_zero", node.if_zero},
                         {"if_one", node.if_one}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  return {{"params",
           {{"num_trees", params_.num_trees},
            {"max_depth", params_.max_depth},
            {"min_samples_split", params_.min_samples_split},
            {"features_per_split", params_.features_per_split},
            {"bootstrap", params_.bootstrap},
            {"seed", params_.seed}}},
          {"degenerate", degenerate_},
          {"attributes", attrs},
          {"features", feats},
          {"trees", trees}};
}

absl::StatusOr<std::unique_ptr<Classifier>> ForestTrainer::Train(
    const Dataset& train, uint64_t seed) const {
  ForestParams params = params_;
  params.seed = seed;
  ASSIGN_OR_RETURN(RandomForest forest, RandomForest::Fit(train, params));
  return std::make_unique<RandomForest>(std::move(forest));
}

}  // namespace ldpfair
