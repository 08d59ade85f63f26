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

#ifndef LDPFAIR_SCHEMA_H_
#define LDPFAIR_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace ldpfair {

// Role of an attribute in the learning problem. A protected attribute is
// always also part of the sensitive set.
enum class Role { kNonSensitive, kSensitive, kProtected, kOutcome };

std::string_view RoleName(Role role);
absl::StatusOr<Role> ParseRole(std::string_view name);

struct AttributeSpec {
  std::string name;
  // Ordered category labels; a stored value is an index into this list.
  std::vector<std::string> domain;
  Role role = Role::kNonSensitive;

  int domain_size() const { return static_cast<int>(domain.size()); }
  bool is_sensitive() const {
    return role == Role::kSensitive || role == Role::kProtected;
  }
};

// Attribute catalog shared by every dataset of an experiment.
struct Schema {
  std::vector<AttributeSpec> attributes;
  // Names of the sensitive attributes in the order used for joint encoding
  // and budget splitting. Empty means "sensitive attributes in catalog
  // order".
  std::vector<std::string> sensitive_order;
  // Which index of the binary protected attribute is the privileged group.
  int privileged_index = 1;

  std::optional<size_t> Find(std::string_view name) const;

  absl::StatusOr<size_t> ProtectedIndex() const;
  absl::StatusOr<size_t> OutcomeIndex() const;
  // Attribute indices of the sensitive set, in sensitive_order.
  absl::StatusOr<std::vector<size_t>> SensitiveIndices() const;
  // Every attribute except the outcome, in catalog order.
  std::vector<size_t> FeatureIndices() const;

  absl::StatusOr<int> EncodeLabel(size_t attribute,
                                  std::string_view label) const;
  absl::StatusOr<std::string> DecodeLabel(size_t attribute, int index) const;
};

// One broken rule. `row` is set for cell-level violations.
struct Violation {
  std::string rule;
  std::string attribute;
  std::optional<size_t> row;
  std::string message;
};

std::vector<Violation> ValidateSchema(const Schema& schema);
std::string FormatViolations(const std::vector<Violation>& violations);

// Schema config document:
//   {
//     "privileged_index": 1,
//     "sensitive_order": ["race", "sex"],
//     "attributes": [
//       {"name": "race", "role": "protected", "domain": ["black", "white"]},
//       ...
//     ]
//   }
// Roles are "non_sensitive", "sensitive", "protected" and "outcome".
absl::StatusOr<Schema> SchemaFromJson(const nlohmann::json& doc);
nlohmann::json SchemaToJson(const Schema& schema);

}  // namespace ldpfair

#endif  // LDPFAIR_SCHEMA_H_
