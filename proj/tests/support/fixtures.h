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

#ifndef LABOV_TESTS_SUPPORT_FIXTURES_H_
#define LABOV_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

#include "labov/bundle.h"
#include "labov/model.h"
#include "labov/wizard.h"

namespace labov::fixtures {

std::string DataPath(const std::string &name);

// The ten-clause example fragment in tests/data/table1.lat.tsv.
Fragment Table1();

// A coder's chart answers for each Table1 clause, in clause order.
std::vector<ChartAnswer> Table1Answers();

// Interviewee clauses with the given texts, ids from 1, no labels.
Fragment Plain(const std::vector<std::string> &texts,
               const std::string &fragment_id = "frag");

// A bundle over versions[0]'s clauses with one layer per version
// ("ann1", "ann2", ...) carrying that version's spans and labels. All
// versions must share clause texts. No gold.
Bundle VotingBundle(const std::vector<Fragment> &versions);

// Clauses labeled with the given micro tokens ("N", "F", "R" or "-"), all
// inside one Story span.
Fragment MicroRow(const std::vector<std::string> &micro,
                  const std::string &fragment_id = "frag");

// Gold corpus with known multisets: micro N 145, F 103, R 52 (300 labeled
// clauses); macro Abstract 1, Orientation 104, Complication 142,
// Evaluation 51, Resolution 1, Coda 1; Story spans 60, 60, 80; one Habitual
// span of 100; one Hypothetical span of 2.
std::vector<Fragment> StatsFixture();

}  // namespace labov::fixtures

#endif  // LABOV_TESTS_SUPPORT_FIXTURES_H_
