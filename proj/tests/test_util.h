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

#ifndef LDPFAIR_TESTS_TEST_UTIL_H_
#define LDPFAIR_TESTS_TEST_UTIL_H_

#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ldpfair/dataset.h"
#include "ldpfair/schema.h"

#define LDPFAIR_TEST_CONCAT_INNER(a, b) a##b
#define LDPFAIR_TEST_CONCAT(a, b) LDPFAIR_TEST_CONCAT_INNER(a, b)

#define EXPECT_OK(expr)                                   \
  do {                                                    \
    const auto& ldpfair_test_status = (expr);             \
    EXPECT_TRUE(ldpfair_test_status.ok())                 \
        << ::ldpfair::testing::StatusOf(ldpfair_test_status); \
  } while (0)
#define ASSERT_OK(expr)                                   \
  do {                                                    \
    const auto& ldpfair_test_status = (expr);             \
    ASSERT_TRUE(ldpfair_test_status.ok())                 \
        << ::ldpfair::testing::StatusOf(ldpfair_test_status); \
  } while (0)

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr) \
  ASSERT_OK_AND_ASSIGN_IMPL(LDPFAIR_TEST_CONCAT(_statusor_, __LINE__), lhs, rexpr)
#define ASSERT_OK_AND_ASSIGN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                              \
  ASSERT_TRUE(statusor.ok()) << statusor.status();      \
  lhs = std::move(statusor).value()

namespace ldpfair::testing {

inline const absl::Status& StatusOf(const absl::Status& s) { return s; }
template <typename T>
const absl::Status& StatusOf(const absl::StatusOr<T>& s) {
  return s.status();
}

// Attribute shorthand for hand-built schemas.
inline AttributeSpec Attr(std::string name, std::vector<std::string> domain,
                          Role role) {
  return {std::move(name), std::move(domain), role};
}

// race (protected, 2), sex (sensitive, 2), age (sensitive, 3),
// job (non-sensitive, 2), Y (outcome).
inline std::shared_ptr<const Schema> ToySchema(int privileged_index = 1) {
  auto schema = std::make_shared<Schema>();
  schema->attributes = {
      Attr("race", {"black", "white"}, Role::kProtected),
      Attr("sex", {"f", "m"}, Role::kSensitive),
      Attr("age", {"young", "mid", "old"}, Role::kSensitive),
      Attr("job", {"no", "yes"}, Role::kNonSensitive),
      Attr("Y", {"0", "1"}, Role::kOutcome),
  };
  schema->privileged_index = privileged_index;
  return schema;
}

}  // namespace ldpfair::testing

#endif  // LDPFAIR_TESTS_TEST_UTIL_H_
