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

#include "labov/model.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "labov/errors.h"
#include "labov/text.h"

namespace labov {
namespace {

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, size_t N>
std::optional<Enum> ParseByNames(std::string_view token,
                                 const Enum (&values)[N],
                                 std::string_view (*token_of)(Enum),
                                 std::string_view (*name_of)(Enum)) {
  for (Enum v : values) {
    if (token == token_of(v) || EqualsIgnoreCase(token, name_of(v))) return v;
  }
  return std::nullopt;
}

bool InRange(const NarrativeSpan &span, int clause_count) {
  return span.start >= 1 && span.end <= clause_count && span.start <= span.end;
}

}  // namespace

std::string_view SpeakerToken(Speaker s) {
  return s == Speaker::kInterviewer ? "IR" : "IE";
}

std::string_view MicroToken(MicroLabel m) {
  switch (m) {
    case MicroLabel::kNarrative: return "N";
    case MicroLabel::kRestricted: return "R";
    case MicroLabel::kFree: return "F";
  }
  return "";
}

std::string_view MicroName(MicroLabel m) {
  switch (m) {
    case MicroLabel::kNarrative: return "Narrative";
    case MicroLabel::kRestricted: return "Restricted";
    case MicroLabel::kFree: return "Free";
  }
  return "";
}

std::string_view MacroToken(MacroLabel m) {
  switch (m) {
    case MacroLabel::kAbstract: return "Abs";
    case MacroLabel::kOrientation: return "Ori";
    case MacroLabel::kComplication: return "Com";
    case MacroLabel::kEvaluation: return "Eva";
    case MacroLabel::kResolution: return "Res";
    case MacroLabel::kCoda: return "Cod";
  }
  return "";
}

std::string_view MacroName(MacroLabel m) {
  switch (m) {
    case MacroLabel::kAbstract: return "Abstract";
    case MacroLabel::kOrientation: return "Orientation";
    case MacroLabel::kComplication: return "Complication";
    case MacroLabel::kEvaluation: return "Evaluation";
    case MacroLabel::kResolution: return "Resolution";
    case MacroLabel::kCoda: return "Coda";
  }
  return "";
}

std::string_view NarrativeTypeName(NarrativeType t) {
  switch (t) {
    case NarrativeType::kStory: return "Story";
    case NarrativeType::kHabitual: return "Habitual";
    case NarrativeType::kHypothetical: return "Hypothetical";
  }
  return "";
}

std::string_view TopicName(Topic t) {
  switch (t) {
    case Topic::kHappinessHardship: return "HappinessHardship";
    case Topic::kChallenges: return "Challenges";
    case Topic::kOther: return "Other";
  }
  return "";
}

std::optional<Speaker> ParseSpeaker(std::string_view token) {
  if (token == "IR" || EqualsIgnoreCase(token, "Interviewer")) {
    return Speaker::kInterviewer;
  }
  if (token == "IE" || EqualsIgnoreCase(token, "Interviewee")) {
    return Speaker::kInterviewee;
  }
  return std::nullopt;
}

std::optional<MicroLabel> ParseMicro(std::string_view token) {
  return ParseByNames(token, kAllMicroLabels, MicroToken, MicroName);
}

std::optional<MacroLabel> ParseMacro(std::string_view token) {
  return ParseByNames(token, kAllMacroLabels, MacroToken, MacroName);
}

std::optional<NarrativeType> ParseNarrativeType(std::string_view token) {
  return ParseByNames(token, kAllNarrativeTypes, NarrativeTypeName,
                      NarrativeTypeName);
}

std::optional<Topic> ParseTopic(std::string_view token) {
  static constexpr Topic kTopics[] = {Topic::kHappinessHardship,
                                      Topic::kChallenges, Topic::kOther};
  return ParseByNames(token, kTopics, TopicName, TopicName);
}

const Clause *Fragment::FindClause(int id) const {
  if (id >= 1 && id <= static_cast<int>(clauses.size()) &&
      clauses[id - 1].id == id) {
    return &clauses[id - 1];
  }
  for (const Clause &c : clauses) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

void Fragment::SortSpans() { std::sort(spans.begin(), spans.end()); }

std::vector<SchemaViolation> CheckFragment(const Fragment &fragment) {
  std::vector<SchemaViolation> out;
  const int n = static_cast<int>(fragment.clauses.size());
  auto report = [&out](std::string_view rule, int clause, std::string msg) {
    out.push_back({std::string(rule), clause, std::move(msg)});
  };

  for (int i = 0; i < n; ++i) {
    const Clause &c = fragment.clauses[i];
    if (c.id != i + 1) {
      report("clause-id-sequence", c.id,
             "clause at position " + std::to_string(i + 1) + " has id " +
                 std::to_string(c.id));
    }
    if (NormalizeText(c.text).empty()) {
      report("clause-text-empty", c.id, "clause text is empty");
    }
  }

  // Spans are examined in canonical order so the output does not depend on
  // the order spans were listed in.
  std::vector<NarrativeSpan> spans = fragment.spans;
  std::sort(spans.begin(), spans.end());

  for (const NarrativeSpan &s : spans) {
    const std::string name(NarrativeTypeName(s.kind));
    if (!InRange(s, n)) {
      report("span-boundary-mismatch", s.start > 0 ? s.start : 0,
             name + " span S=" + std::to_string(s.start) +
                 " E=" + std::to_string(s.end) +
                 " does not delimit clauses of this fragment");
      continue;
    }
    if (s.length() < 2) {
      report("span-min-length", s.start,
             name + " span at clause " + std::to_string(s.start) +
                 " covers a single clause; spans need at least two");
    }
  }

  for (size_t i = 0; i < spans.size(); ++i) {
    for (size_t j = i + 1; j < spans.size(); ++j) {
      const NarrativeSpan &a = spans[i];
      const NarrativeSpan &b = spans[j];
      if (a.kind != b.kind || !InRange(a, n) || !InRange(b, n)) continue;
      if (a.Overlaps(b)) {
        report("span-same-kind-overlap", b.start,
               std::string(NarrativeTypeName(a.kind)) + " spans " +
                   std::to_string(a.start) + "-" + std::to_string(a.end) +
                   " and " + std::to_string(b.start) + "-" +
                   std::to_string(b.end) + " overlap");
      }
    }
  }

  for (const Clause &c : fragment.clauses) {
    bool in_any = false;
    bool in_hypothetical = false;
    bool in_other = false;
    for (const NarrativeSpan &s : spans) {
      if (!InRange(s, n) || !s.Contains(c.id)) continue;
      in_any = true;
      (s.kind == NarrativeType::kHypothetical ? in_hypothetical : in_other) =
          true;
    }
    if (c.speaker == Speaker::kInterviewer) {
      if (c.labeled()) {
        report("interviewer-unit", c.id, "interviewer unit carries a label");
      }
      if (in_any) {
        report("interviewer-unit", c.id,
               "interviewer unit lies inside a narrative span");
      }
    }
    if (c.labeled() && !in_any) {
      report("label-outside-span", c.id,
             "labeled clause lies outside every narrative span");
    }
    if (in_hypothetical && !in_other) {
      if (c.micro) {
        report("hypothetical-no-micro", c.id,
               "clause in a hypothetical narrative carries micro label " +
                   std::string(MicroToken(*c.micro)));
      }
      if (c.macro) {
        report("hypothetical-no-macro", c.id,
               "clause in a hypothetical narrative carries macro label " +
                   std::string(MacroName(*c.macro)));
      }
    }
  }
  return out;
}

void ValidateFragment(const Fragment &fragment) {
  const auto violations = CheckFragment(fragment);
  if (violations.empty()) return;
  std::string msg = "fragment '" + fragment.fragment_id + "' is invalid:";
  for (const auto &v : violations) {
    msg += "\n  [" + v.rule_id + "] clause " + std::to_string(v.clause) +
           ": " + v.message;
  }
  throw ValidationError(msg);
}

std::span<const Clause> ClausesInSpan(const Fragment &fragment,
                                      const NarrativeSpan &span) {
  const int n = static_cast<int>(fragment.clauses.size());
  if (!InRange(span, n)) {
    throw std::out_of_range("span " + std::to_string(span.start) + "-" +
                            std::to_string(span.end) +
                            " is outside a fragment of " + std::to_string(n) +
                            " clauses");
  }
  return std::span<const Clause>(fragment.clauses)
      .subspan(span.start - 1, span.length());
}

std::map<NarrativeType, SpanLengthStats> SpanLengths(
    std::span<const Fragment> fragments) {
  std::map<NarrativeType, SpanLengthStats> out;
  for (NarrativeType t : kAllNarrativeTypes) out[t] = {};
  for (const Fragment &f : fragments) {
    for (const NarrativeSpan &s : f.spans) {
      SpanLengthStats &st = out[s.kind];
      ++st.count;
      st.total_clauses += s.length();
    }
  }
  return out;
}

}  // namespace labov
