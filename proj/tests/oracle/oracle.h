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

// Test-only reference implementations. Nothing here calls into the metric
// code it is used to check; only the plain data types are shared.

#ifndef LABOV_TESTS_ORACLE_ORACLE_H_
#define LABOV_TESTS_ORACLE_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labov/model.h"

namespace labov::oracle {

struct BruteEdit {
  int matches = 0;
  int additions = 0;
  int transpositions = 0;
  std::int64_t offset_sum = 0;
};

// Enumerates every pairing of the non-coincident boundaries of two mass
// sequences and keeps the cheapest (additions + offsets / nt), preferring
// more transpositions on ties.
BruteEdit BruteForceEdit(const std::vector<int> &masses_a,
                         const std::vector<int> &masses_b, int nt);

Rational BruteForceSimilarity(const std::vector<int> &masses_a,
                              const std::vector<int> &masses_b, int nt);

// All compositions of n (mass sequences summing to n).
std::vector<std::vector<int>> Compositions(int n);

// Nominal alpha through an explicit coincidence matrix built by visiting
// every ordered pair of pairable values in every unit.
// values[u][c] is coder c's label for unit u. Returns nullopt when the
// expected disagreement is zero or nothing is pairable.
std::optional<double> CoincidenceAlpha(
    const std::vector<std::vector<std::optional<std::string>>> &values);

}  // namespace labov::oracle

#endif  // LABOV_TESTS_ORACLE_ORACLE_H_
