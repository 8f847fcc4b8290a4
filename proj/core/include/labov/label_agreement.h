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

#ifndef LABOV_LABEL_AGREEMENT_H_
#define LABOV_LABEL_AGREEMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "labov/model.h"

namespace labov {

struct LabelUnit {
  std::string fragment_id;
  int clause = 0;

  auto operator<=>(const LabelUnit &) const = default;
};

// Labels given by several coders to shared units. values[u][c] is coder c's
// token for unit u; nullopt means the coder gave no label.
struct LabelMatrix {
  std::vector<LabelUnit> units;
  std::vector<std::string> coders;
  std::vector<std::vector<std::optional<std::string>>> values;

  void AddUnit(LabelUnit unit, std::vector<std::optional<std::string>> row);
};

// Nominal Krippendorff's alpha from the coincidence matrix. Units with fewer
// than two labels do not contribute. Throws ValidationError for fewer than
// two coders and UndefinedMetric when nothing is pairable or every pairable
// value is identical.
double KrippendorffAlphaNominal(const LabelMatrix &matrix);

enum class ExactMatchDenominator {
  kAnyCoder,  // units where at least one coder chose the label
  kMajority,  // units where a strict majority of labeling coders chose it
};

struct ExactMatch {
  std::int64_t agreed = 0;  // every labeling coder (at least two) chose it
  std::int64_t chosen = 0;
  Rational rate() const {
    return chosen == 0 ? Rational(0) : Rational(agreed, chosen);
  }
};

// Per-label exact-match counts. Labels nobody chose are absent.
std::map<std::string, ExactMatch> ExactMatchRates(
    const LabelMatrix &matrix,
    ExactMatchDenominator denominator = ExactMatchDenominator::kAnyCoder);

// Label pairs over all coder pairs per unit, keyed with the smaller token
// first.
std::map<std::pair<std::string, std::string>, std::int64_t> ConfusionCounts(
    const LabelMatrix &matrix);

struct LabelAgreementReport {
  std::string level;  // "micro" or "macro"
  std::optional<double> alpha;
  std::string alpha_undefined_reason;
  std::int64_t pairable_units = 0;
  std::int64_t units = 0;
  std::vector<std::string> coders;
  std::map<std::string, ExactMatch> exact_match;
  ExactMatchDenominator denominator = ExactMatchDenominator::kAnyCoder;
  std::map<std::pair<std::string, std::string>, std::int64_t> confusion;
  std::map<std::string, std::int64_t> label_counts;  // over all coders
};

LabelAgreementReport ComputeLabelAgreement(
    const LabelMatrix &matrix, std::string level,
    ExactMatchDenominator denominator = ExactMatchDenominator::kAnyCoder);

}  // namespace labov

#endif  // LABOV_LABEL_AGREEMENT_H_
