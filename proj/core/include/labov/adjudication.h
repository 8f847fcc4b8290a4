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

#ifndef LABOV_ADJUDICATION_H_
#define LABOV_ADJUDICATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labov/bundle.h"
#include "labov/label_agreement.h"
#include "labov/model.h"

namespace labov {

enum class VoteField { kMicro, kMacro, kSpanMembership };

std::string_view VoteFieldName(VoteField field);
std::optional<VoteField> ParseVoteField(std::string_view name);

// Span membership votes.
inline constexpr std::string_view kInSpan = "in";
inline constexpr std::string_view kOutOfSpan = "out";

struct AuditRecord {
  std::vector<std::string> resolvers;
  std::string when;
  std::string note;

  bool operator==(const AuditRecord &) const = default;
};

// The vote on one field of one clause. decided is set exactly when
// needs_discussion is false.
struct VoteOutcome {
  LabelUnit unit;
  VoteField field = VoteField::kMicro;
  std::optional<NarrativeType> span_kind;  // span membership only
  std::vector<std::string> votes;          // sorted; missing votes dropped
  std::optional<std::string> decided;
  bool needs_discussion = false;
  bool unanimous = false;
  std::string basis;  // unanimous, majority, tie, no-agreement, short-run,
                      // discussion
  std::optional<AuditRecord> audit;

  bool operator==(const VoteOutcome &) const = default;
};

// Majority rule over one unit's votes: the label with strictly more votes
// than any other wins; a tie for first place goes to discussion. Missing
// votes are not counted. Returns nullopt when nobody voted.
std::optional<VoteOutcome> TallyVotes(
    LabelUnit unit, VoteField field,
    std::span<const std::optional<std::string>> votes);

// Votes every clause of the bundle on one field. All layers must label the
// same clause segmentation. For span membership a clause is in a span of
// kind K when a strict majority of layers put it there; runs of a single
// in-span clause are sent to discussion.
// Throws ValidationError for fewer than two layers or misaligned layers.
std::vector<VoteOutcome> MajorityVote(const Bundle &bundle, VoteField field);

// All three fields, span membership first.
std::vector<VoteOutcome> Adjudicate(const Bundle &bundle);

// Settles an outcome that needs discussion. Throws ValidationError when the
// outcome is already decided or the label is not valid for its field.
VoteOutcome ResolveDiscussion(const VoteOutcome &outcome,
                              std::string_view resolution,
                              std::vector<std::string> resolvers,
                              std::string note, std::string when);

struct Resolution {
  LabelUnit unit;
  VoteField field = VoteField::kMicro;
  std::optional<NarrativeType> span_kind;
  std::string label;
  std::vector<std::string> resolvers;
  std::string note;
  std::string when;
};

// Applies resolutions to matching pending outcomes. Throws ValidationError
// for a resolution that matches no outcome.
void ApplyResolutions(std::vector<VoteOutcome> &outcomes,
                      std::span<const Resolution> resolutions);

std::vector<Resolution> ResolutionsFromJson(const nlohmann::json &json);

// Gold fragment from fully decided outcomes. Throws ValidationError while
// any outcome still needs discussion.
Fragment BuildGold(const Bundle &bundle, std::span<const VoteOutcome> outcomes);

nlohmann::ordered_json OutcomeToJson(const VoteOutcome &outcome);
VoteOutcome OutcomeFromJson(const nlohmann::json &json);

enum class PercentRounding { kNearest, kFloor };

// Whole percent of a share in [0, 1]; kNearest rounds halves up.
int RoundPercent(const Rational &share, PercentRounding rounding);

struct MicroShare {
  std::int64_t count = 0;
  Rational share{0};  // of all micro-labeled clauses
  int percent = 0;
};

struct GoldCorpusStats {
  int fragments = 0;
  std::map<MacroLabel, std::int64_t> macro_counts;
  std::map<MicroLabel, MicroShare> micro;
  std::int64_t micro_labeled = 0;
  std::map<NarrativeType, SpanLengthStats> spans;
  std::int64_t total_clauses = 0;
  std::int64_t interviewee_clauses = 0;
  std::int64_t interviewer_clauses = 0;
  PercentRounding rounding = PercentRounding::kNearest;
};

GoldCorpusStats CorpusStats(std::span<const Fragment> gold,
                            PercentRounding rounding = PercentRounding::kNearest);

}  // namespace labov

#endif  // LABOV_ADJUDICATION_H_
