// Copyright 2026 The Labov Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One firing and one quiet fixture for every implemented lint rule.

#ifndef LABOV_TESTS_SUPPORT_LINT_CASES_H_
#define LABOV_TESTS_SUPPORT_LINT_CASES_H_

#include <string>
#include <vector>

#include "labov/model.h"

namespace labov::fixtures {

struct LintCase {
  std::string rule_id;
  bool fires = false;
  Fragment fragment;
};

std::vector<LintCase> LintCases();

}  // namespace labov::fixtures

#endif  // LABOV_TESTS_SUPPORT_LINT_CASES_H_
