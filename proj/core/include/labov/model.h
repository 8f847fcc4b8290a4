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

#ifndef LABOV_MODEL_H_
#define LABOV_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "labov/segmentation.h"

namespace labov {

using Rational = boost::rational<std::int64_t>;

inline double ToDouble(const Rational &r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

enum class Speaker { kInterviewer, kInterviewee };

// Micro-level temporal function. There is deliberately no value for
// hypothetical clauses: those carry no micro label at all.
enum class MicroLabel { kNarrative, kRestricted, kFree };

enum class MacroLabel {
  kAbstract,
  kOrientation,
  kComplication,
  kEvaluation,
  kResolution,
  kCoda,
};

enum class NarrativeType { kStory, kHabitual, kHypothetical };

enum class Topic { kHappinessHardship, kChallenges, kOther };

inline constexpr MicroLabel kAllMicroLabels[] = {
    MicroLabel::kNarrative, MicroLabel::kFree, MicroLabel::kRestricted};
inline constexpr MacroLabel kAllMacroLabels[] = {
    MacroLabel::kAbstract,   MacroLabel::kOrientation,
    MacroLabel::kComplication, MacroLabel::kEvaluation,
    MacroLabel::kResolution, MacroLabel::kCoda};
inline constexpr NarrativeType kAllNarrativeTypes[] = {
    NarrativeType::kStory, NarrativeType::kHabitual,
    NarrativeType::kHypothetical};

// Canonical tokens: IR/IE, N/R/F, Abs/Ori/Com/Eva/Res/Cod.
std::string_view SpeakerToken(Speaker s);
std::string_view MicroToken(MicroLabel m);
std::string_view MacroToken(MacroLabel m);
std::string_view MicroName(MicroLabel m);
std::string_view MacroName(MacroLabel m);
std::string_view NarrativeTypeName(NarrativeType t);
std::string_view TopicName(Topic t);

// Parsers accept the canonical token and the full English name
// (case-insensitive). They return nullopt for anything else.
std::optional<Speaker> ParseSpeaker(std::string_view token);
std::optional<MicroLabel> ParseMicro(std::string_view token);
std::optional<MacroLabel> ParseMacro(std::string_view token);
std::optional<NarrativeType> ParseNarrativeType(std::string_view token);
std::optional<Topic> ParseTopic(std::string_view token);

struct Clause {
  int id = 0;
  Speaker speaker = Speaker::kInterviewee;
  std::string text;
  std::optional<MicroLabel> micro;
  std::optional<MacroLabel> macro;

  bool labeled() const { return micro.has_value() || macro.has_value(); }
  bool operator==(const Clause &) const = default;
};

// Clauses start..end inclusive, marked S at start and E at end.
struct NarrativeSpan {
  NarrativeType kind = NarrativeType::kStory;
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool Contains(int clause_id) const {
    return clause_id >= start && clause_id <= end;
  }
  bool Overlaps(const NarrativeSpan &other) const {
    return start <= other.end && other.start <= end;
  }
  auto operator<=>(const NarrativeSpan &) const = default;
};

// One interview segment on one topic. A Fragment may be built in an invalid
// state (parsers are lenient); CheckFragment reports what is wrong with it.
struct Fragment {
  std::string fragment_id;
  Topic topic = Topic::kOther;
  std::vector<Clause> clauses;
  std::vector<NarrativeSpan> spans;

  const Clause *FindClause(int id) const;

  // Puts spans in canonical order (kind, start, end).
  void SortSpans();

  bool operator==(const Fragment &) const = default;
};

// A schema invariant broken by a fragment. rule_id names the lint rule that
// reports it; clause is 0 when the violation is not tied to one clause.
struct SchemaViolation {
  std::string rule_id;
  int clause = 0;
  std::string message;
};

// All schema violations, in a deterministic order. Empty iff valid.
std::vector<SchemaViolation> CheckFragment(const Fragment &fragment);

inline bool IsValid(const Fragment &fragment) {
  return CheckFragment(fragment).empty();
}

// Throws ValidationError listing every violation.
void ValidateFragment(const Fragment &fragment);

// Clauses start..end of the span. Throws std::out_of_range when the span
// does not fit the fragment.
std::span<const Clause> ClausesInSpan(const Fragment &fragment,
                                      const NarrativeSpan &span);

struct SpanLengthStats {
  int count = 0;
  std::int64_t total_clauses = 0;

  // Absent when count == 0.
  std::optional<Rational> mean_length() const {
    if (count == 0) return std::nullopt;
    return Rational(total_clauses, count);
  }
};

// Per narrative type span counts and mean lengths. Every type is present in
// the result, with count 0 when no span of that kind exists.
std::map<NarrativeType, SpanLengthStats> SpanLengths(
    std::span<const Fragment> fragments);

enum class LabelBasis { kOwn, kReference };

// One annotator's labeling of a fragment. Clause ids in spans, micro and
// macro refer to clause_boundaries when label_basis is kOwn and to the
// bundle's reference segmentation when it is kReference.
struct AnnotatorLayer {
  std::string annotator_id;
  std::string fragment_id;
  std::string text_digest;
  Segmentation clause_boundaries;
  LabelBasis label_basis = LabelBasis::kOwn;
  std::vector<NarrativeSpan> spans;
  std::map<int, MicroLabel> micro;
  std::map<int, MacroLabel> macro;

  bool operator==(const AnnotatorLayer &) const = default;
};

}  // namespace labov

#endif  // LABOV_MODEL_H_
