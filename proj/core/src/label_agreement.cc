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

#include "labov/label_agreement.h"

#include <set>

#include "labov/errors.h"

namespace labov {
namespace {

// Label -> number of coders who gave it, for one unit.
std::map<std::string, std::int64_t> Tally(
    const std::vector<std::optional<std::string>> &row, std::int64_t *total) {
  std::map<std::string, std::int64_t> counts;
  *total = 0;
  for (const auto &v : row) {
    if (!v) continue;
    ++counts[*v];
    ++*total;
  }
  return counts;
}

}  // namespace

void LabelMatrix::AddUnit(LabelUnit unit,
                          std::vector<std::optional<std::string>> row) {
  if (row.size() != coders.size()) {
    throw ValidationError("unit row has " + std::to_string(row.size()) +
                          " values for " + std::to_string(coders.size()) +
                          " coders");
  }
  units.push_back(std::move(unit));
  values.push_back(std::move(row));
}

double KrippendorffAlphaNominal(const LabelMatrix &matrix) {
  if (matrix.coders.size() < 2) {
    throw ValidationError("alpha needs at least two coders");
  }
  // With nominal distance only the diagonal of the coincidence matrix
  // matters: o_cc = sum_u n_uc (n_uc - 1) / (m_u - 1).
  std::map<std::string, double> marginal;  // n_c
  double diagonal = 0;                     // sum_c o_cc
  double n = 0;
  for (const auto &row : matrix.values) {
    std::int64_t m = 0;
    const auto counts = Tally(row, &m);
    if (m < 2) continue;
    for (const auto &[label, k] : counts) {
      marginal[label] += static_cast<double>(k);
      diagonal += static_cast<double>(k * (k - 1)) / static_cast<double>(m - 1);
    }
    n += static_cast<double>(m);
  }
  if (n == 0) throw UndefinedMetric("alpha undefined: no pairable units");
  double same_by_chance = 0;  // sum_c n_c (n_c - 1)
  for (const auto &[label, nc] : marginal) same_by_chance += nc * (nc - 1);
  const double expected = n * (n - 1) - same_by_chance;  // sum_{c!=k} n_c n_k
  if (expected <= 0) throw UndefinedMetric("alpha undefined: no variation");
  const double observed = n - diagonal;  // sum_{c!=k} o_ck
  return 1.0 - (n - 1) * observed / expected;
}

std::map<std::string, ExactMatch> ExactMatchRates(
    const LabelMatrix &matrix, ExactMatchDenominator denominator) {
  std::map<std::string, ExactMatch> out;
  for (const auto &row : matrix.values) {
    std::int64_t m = 0;
    const auto counts = Tally(row, &m);
    for (const auto &[label, k] : counts) {
      const bool counted = denominator == ExactMatchDenominator::kAnyCoder ||
                           2 * k > m;
      const bool agreed = k == m && m >= 2;
      if (!counted) continue;
      ExactMatch &e = out[label];
      ++e.chosen;
      if (agreed) ++e.agreed;
    }
  }
  return out;
}

std::map<std::pair<std::string, std::string>, std::int64_t> ConfusionCounts(
    const LabelMatrix &matrix) {
  std::map<std::pair<std::string, std::string>, std::int64_t> out;
  for (const auto &row : matrix.values) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (!row[i]) continue;
      for (size_t j = i + 1; j < row.size(); ++j) {
        if (!row[j]) continue;
        ++out[std::minmax(*row[i], *row[j])];
      }
    }
  }
  return out;
}

LabelAgreementReport ComputeLabelAgreement(const LabelMatrix &matrix,
                                           std::string level,
                                           ExactMatchDenominator denominator) {
  LabelAgreementReport report;
  report.level = std::move(level);
  report.coders = matrix.coders;
  report.denominator = denominator;
  report.units = static_cast<std::int64_t>(matrix.units.size());
  for (const auto &row : matrix.values) {
    std::int64_t m = 0;
    for (const auto &[label, k] : Tally(row, &m)) report.label_counts[label] += k;
    if (m >= 2) ++report.pairable_units;
  }
  try {
    report.alpha = KrippendorffAlphaNominal(matrix);
  } catch (const UndefinedMetric &e) {
    report.alpha_undefined_reason = e.what();
  }
  report.exact_match = ExactMatchRates(matrix, denominator);
  report.confusion = ConfusionCounts(matrix);
  return report;
}

}  // namespace labov
