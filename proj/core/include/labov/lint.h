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

#ifndef LABOV_LINT_H_
#define LABOV_LINT_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labov/bundle.h"
#include "labov/model.h"
#include "labov/segmentation.h"

namespace labov {

enum class Severity { kError, kWarning, kInfo };

std::string_view SeverityName(Severity s);

struct LintLocation {
  std::string fragment_id;
  int clause = 0;    // 0 when not tied to a clause
  int boundary = 0;  // boundary position, 0 when not tied to one

  bool operator==(const LintLocation &) const = default;
};

struct LintFinding {
  std::string rule_id;
  Severity severity = Severity::kInfo;
  LintLocation location;
  std::string message;
  std::string guideline_ref;

  bool operator==(const LintFinding &) const = default;
};

struct RuleInfo {
  std::string_view id;
  Severity severity;
  std::string_view guideline_ref;
  std::string_view summary;
  bool implemented;
};

// Every rule a finding may cite, including reserved, unimplemented ones.
std::span<const RuleInfo> RuleTable();
const RuleInfo *FindRule(std::string_view id);

struct LintConfig {
  std::vector<std::string> onset_markers;
  std::vector<std::string> formal_nouns;
  std::vector<std::string> topic_particles;
  std::vector<std::string> subject_particles;
  std::vector<std::string> quotative_markers;
  std::set<std::string> disabled;

  static LintConfig Default();
  // Fields present in the JSON object replace the defaults. Throws
  // ParseError on unknown rule ids or malformed values.
  static LintConfig FromJson(const nlohmann::json &json);
};

// Schema errors (one per CheckFragment violation) plus a warning for spans of
// different kinds that overlap.
std::vector<LintFinding> LintStructure(const Fragment &fragment);

// Surface-cue checks of a clause segmentation. Atoms inside `skip` (the
// interviewer's turns) never produce findings.
std::vector<LintFinding> LintSegmentationCues(
    std::string_view raw_text, const Segmentation &segmentation,
    std::span<const AtomRange> skip = {},
    const LintConfig &config = LintConfig::Default(),
    std::string_view fragment_id = {});

// Cue checks over a fragment's clause texts joined with single spaces.
std::vector<LintFinding> LintFragmentCues(
    const Fragment &fragment, const LintConfig &config = LintConfig::Default());

// Informational macro-structure heuristics.
std::vector<LintFinding> LintMacroShape(const Fragment &fragment);

// Informational markers on interviewee clauses outside every span that
// contain an onset discourse marker.
std::vector<LintFinding> HintSpanOnsets(
    const Fragment &fragment, const LintConfig &config = LintConfig::Default());

// All of the above, minus disabled rules.
std::vector<LintFinding> LintFragment(
    const Fragment &fragment, const LintConfig &config = LintConfig::Default());

bool HasErrors(std::span<const LintFinding> findings);

nlohmann::ordered_json FindingToJson(const LintFinding &finding);

}  // namespace labov

#endif  // LABOV_LINT_H_
