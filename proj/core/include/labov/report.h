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

#ifndef LABOV_REPORT_H_
#define LABOV_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "labov/adjudication.h"
#include "labov/bundle.h"
#include "labov/label_agreement.h"
#include "labov/lint.h"
#include "labov/seg_agreement.h"
#include "labov/wizard.h"

namespace labov {

// Bundles from files and directories. A directory contributes every *.json
// file in it, in name order. Throws ParseError or ValidationError for a bad
// bundle and std::runtime_error for unreadable paths.
std::vector<Bundle> LoadBundles(std::span<const std::filesystem::path> paths);

// A fragment from a .lat.tsv file, or the gold fragment of a bundle file.
Fragment LoadFragment(const std::filesystem::path &path);

// Each layer's own clause segmentation, in layer order.
FragmentSegmentations SegmentationsOf(const Bundle &bundle);

// One row per clause that at least one coder labeled on `field` (micro or
// macro). Coders are all annotator ids of the corpus in sorted order; the
// layers of a bundle must label the same clause segmentation.
LabelMatrix LabelMatrixOf(std::span<const Bundle> bundles, VoteField field);

// Gold fragments of the bundles that carry one.
std::vector<Fragment> GoldFragments(std::span<const Bundle> bundles);

// Corpus-level runs shared by the command line and the service.
SegAgreementReport SegAgreementFor(std::span<const Bundle> bundles, int nt,
                                   BedPooling pooling = BedPooling::kGlobal);
LabelAgreementReport LabelAgreementFor(
    std::span<const Bundle> bundles, VoteField field,
    ExactMatchDenominator denominator = ExactMatchDenominator::kAnyCoder);
// Micro and macro reports in one document.
nlohmann::ordered_json LabelAgreementJson(
    std::span<const Bundle> bundles,
    ExactMatchDenominator denominator = ExactMatchDenominator::kAnyCoder);
// Findings for every layer of the bundle; messages name the annotator.
std::vector<LintFinding> LintBundle(const Bundle &bundle,
                                    const LintConfig &config);
// Outcome of a finished chart walk: {"label": token or null}.
nlohmann::ordered_json DecisionToJson(const ChartOutcome &outcome);

// Two-space indented JSON with a trailing newline.
std::string DumpJson(const nlohmann::ordered_json &json);

nlohmann::ordered_json SegReportToJson(const SegAgreementReport &report);
nlohmann::ordered_json LabelReportToJson(const LabelAgreementReport &report);
nlohmann::ordered_json BaselineReportToJson(const BaselineReport &report);
nlohmann::ordered_json OutcomesToJson(std::span<const VoteOutcome> outcomes);
nlohmann::ordered_json StatsToJson(const GoldCorpusStats &stats);
nlohmann::ordered_json FindingsToJson(std::span<const LintFinding> findings);

std::string SegReportTable(const SegAgreementReport &report);
std::string LabelReportTable(const LabelAgreementReport &report);
std::string BaselineReportTable(const BaselineReport &report);
std::string OutcomesTable(std::span<const VoteOutcome> outcomes);
// Macro label totals, narrative span counts with mean lengths, and micro
// label shares in whole percent with their sum.
std::string StatsTable(const GoldCorpusStats &stats);
std::string FindingsTable(std::span<const LintFinding> findings);

}  // namespace labov

#endif  // LABOV_REPORT_H_
