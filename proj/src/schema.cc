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

#include "ldpfair/schema.h"

#include <set>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace ldpfair {

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kNonSensitive:
      return "non_sensitive";
    case Role::kSensitive:
      return "sensitive";
    case Role::kProtected:
      return "protected";
    case Role::kOutcome:
      return "outcome";
  }
  return "unknown";
}

absl::StatusOr<Role> ParseRole(std::string_view name) {
  for (Role r : {Role::kNonSensitive, Role::kSensitive, Role::kProtected,
                 Role::kOutcome}) {
    if (RoleName(r) == name) return r;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown role '", std::string(name), "'"));
}

std::optional<size_t> Schema::Find(std::string_view name) const {
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

absl::StatusOr<size_t> UniqueWithRole(const Schema& schema, Role role) {
  std::optional<size_t> found;
  for (size_t i = 0; i < schema.attributes.size(); ++i) {
    if (schema.attributes[i].role != role) continue;
    if (found.has_value()) {
      return absl::FailedPreconditionError(
          absl::StrCat("more than one ", std::string(RoleName(role)), " attribute"));
    }
    found = i;
  }
  if (!found.has_value()) {
    return absl::FailedPreconditionError(
        absl::StrCat("no ", std::string(RoleName(role)), " attribute"));
  }
  return *found;
}

}  // namespace

absl::StatusOr<size_t> Schema::ProtectedIndex() const {
  return UniqueWithRole(*this, Role::kProtected);
}

absl::StatusOr<size_t> Schema::OutcomeIndex() const {
  return UniqueWithRole(*this, Role::kOutcome);
}

absl::StatusOr<std::vector<size_t>> Schema::SensitiveIndices() const {
  std::vector<size_t> indices;
  if (sensitive_order.empty()) {
    for (size_t i = 0; i < attributes.size(); ++i) {
      if (attributes[i].is_sensitive()) indices.push_back(i);
    }
    return indices;
  }
  size_t expected = 0;
  for (const auto& a : attributes) expected += a.is_sensitive() ? 1 : 0;
  std::set<size_t> seen;
  for (const auto& name : sensitive_order) {
    const auto idx = Find(name);
    if (!idx.has_value()) {
      return absl::FailedPreconditionError(
          absl::StrCat("sensitive_order names unknown attribute '", name, "'"));
    }
    if (!attributes[*idx].is_sensitive()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "sensitive_order names non-sensitive attribute '", name, "'"));
    }
    if (!seen.insert(*idx).second) {
      return absl::FailedPreconditionError(
          absl::StrCat("sensitive_order repeats '", name, "'"));
    }
    indices.push_back(*idx);
  }
  if (indices.size() != expected) {
    return absl::FailedPreconditionError(
        "sensitive_order must list every sensitive attribute");
  }
  return indices;
}

std::vector<size_t> Schema::FeatureIndices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].role != Role::kOutcome) out.push_back(i);
  }
  return out;
}

absl::StatusOr<int> Schema::EncodeLabel(size_t attribute,
                                        std::string_view label) const {
  if (attribute >= attributes.size()) {
    return absl::OutOfRangeError("attribute index out of range");
  }
  const auto& domain = attributes[attribute].domain;
  for (size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == label) return static_cast<int>(i);
  }
  return absl::NotFoundError(absl::StrCat("label '", std::string(label),
                                          "' not in domain of '",
                                          attributes[attribute].name, "'"));
}

absl::StatusOr<std::string> Schema::DecodeLabel(size_t attribute,
                                                int index) const {
  if (attribute >= attributes.size()) {
    return absl::OutOfRangeError("attribute index out of range");
  }
  const auto& domain = attributes[attribute].domain;
  if (index < 0 || static_cast<size_t>(index) >= domain.size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "index ", index, " outside domain of '", attributes[attribute].name,
        "'"));
  }
  return domain[index];
}

std::vector<Violation> ValidateSchema(const Schema& schema) {
  std::vector<Violation> out;
  auto add = [&out](std::string rule, std::string attribute,
                    std::string message) {
    out.push_back({std::move(rule), std::move(attribute), std::nullopt,
                   std::move(message)});
  };

  std::set<std::string> names;
  int protected_count = 0;
  int outcome_count = 0;
  for (const auto& a : schema.attributes) {
    if (!names.insert(a.name).second) {
      add("unique-name", a.name, "attribute name appears more than once");
    }
    std::set<std::string> labels(a.domain.begin(), a.domain.end());
    if (labels.size() != a.domain.size()) {
      add("unique-labels", a.name, "domain labels are not unique");
    }
    if (a.domain.empty()) {
      add("domain-size", a.name, "domain is empty");
    } else if (a.is_sensitive() && a.domain.size() < 2) {
      add("domain-size", a.name, "sensitive attribute needs at least 2 labels");
    }
    if (a.role == Role::kProtected) ++protected_count;
    if (a.role == Role::kOutcome) {
      ++outcome_count;
      if (a.domain.size() != 2) {
        add("binary-outcome", a.name, "outcome domain must have 2 labels");
      }
    }
  }
  if (protected_count != 1) {
    add("role-cardinality", "",
        absl::StrCat("expected exactly one protected attribute, found ",
                     protected_count));
  }
  if (outcome_count != 1) {
    add("role-cardinality", "",
        absl::StrCat("expected exactly one outcome attribute, found ",
                     outcome_count));
  }
  if (!schema.sensitive_order.empty()) {
    if (auto s = schema.SensitiveIndices(); !s.ok()) {
      add("sensitive-order", "", std::string(s.status().message()));
    }
  }
  if (schema.privileged_index != 0 && schema.privileged_index != 1) {
    add("privileged-index", "", "privileged_index must be 0 or 1");
  }
  return out;
}

std::string FormatViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    absl::StrAppend(&out, v.rule);
    if (!v.attribute.empty()) absl::StrAppend(&out, " [", v.attribute, "]");
    if (v.row.has_value()) absl::StrAppend(&out, " row ", *v.row);
    absl::StrAppend(&out, ": ", v.message, "\n");
  }
  return out;
}

absl::StatusOr<Schema> SchemaFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("schema document must be an object");
  }
  Schema schema;
  try {
    schema.privileged_index = doc.value("privileged_index", 1);
    if (doc.contains("sensitive_order")) {
      schema.sensitive_order =
          doc.at("sensitive_order").get<std::vector<std::string>>();
    }
    for (const auto& item : doc.at("attributes")) {
      AttributeSpec spec;
      spec.name = item.at("name").get<std::string>();
      spec.domain = item.at("domain").get<std::vector<std::string>>();
      auto role = ParseRole(item.value("role", std::string("non_sensitive")));
      if (!role.ok()) return role.status();
      spec.role = *role;
      schema.attributes.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed schema document: ", e.what()));
  }
  return schema;
}

nlohmann::json SchemaToJson(const Schema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& a : schema.attributes) {
    attrs.push_back({{"name", a.name},
                     {"role", std::string(RoleName(a.role))},
                     {"domain", a.domain}});
  }
  nlohmann::json doc = {{"privileged_index", schema.privileged_index},
                        {"attributes", attrs}};
  if (!schema.sensitive_order.empty()) {
    doc["sensitive_order"] = schema.sensitive_order;
  }
  return doc;
}

}  // namespace ldpfair
