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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "labov/errors.h"
#include "support/fixtures.h"

namespace labov {
namespace {

std::vector<std::string> RuleIds(const Fragment &f) {
  std::vector<std::string> ids;
  for (const auto &v : CheckFragment(f)) ids.push_back(v.rule_id);
  return ids;
}

bool Has(const std::vector<std::string> &ids, const std::string &id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

TEST(ModelTest, TokensRoundTrip) {
  for (MicroLabel m : kAllMicroLabels) {
    EXPECT_EQ(ParseMicro(MicroToken(m)), m);
    EXPECT_EQ(ParseMicro(MicroName(m)), m);
  }
  for (MacroLabel m : kAllMacroLabels) {
    EXPECT_EQ(ParseMacro(MacroToken(m)), m);
    EXPECT_EQ(ParseMacro(MacroName(m)), m);
  }
  for (NarrativeType t : kAllNarrativeTypes) {
    EXPECT_EQ(ParseNarrativeType(NarrativeTypeName(t)), t);
  }
  EXPECT_EQ(ParseMacro("coda"), MacroLabel::kCoda);
  EXPECT_EQ(ParseSpeaker("IR"), Speaker::kInterviewer);
  EXPECT_FALSE(ParseMicro("X").has_value());
  EXPECT_FALSE(ParseMacro("").has_value());
}

TEST(ModelTest, Table1IsValid) {
  const Fragment f = fixtures::Table1();
  EXPECT_TRUE(IsValid(f)) << CheckFragment(f).size();
  EXPECT_NO_THROW(ValidateFragment(f));
  ASSERT_EQ(f.spans.size(), 1u);
  EXPECT_EQ(ClausesInSpan(f, f.spans[0]).size(), 10u);
}

TEST(ModelTest, SingleClauseSpanRejected) {
  Fragment f = fixtures::Plain({"a", "b", "c"});
  f.spans.push_back({NarrativeType::kStory, 2, 2});
  EXPECT_TRUE(Has(RuleIds(f), "span-min-length"));
  EXPECT_THROW(ValidateFragment(f), ValidationError);
}

TEST(ModelTest, SameKindOverlapRejectedCrossKindAllowed) {
  Fragment f = fixtures::Plain({"a", "b", "c", "d"});
  f.spans.push_back({NarrativeType::kStory, 1, 3});
  f.spans.push_back({NarrativeType::kHabitual, 2, 4});
  EXPECT_TRUE(IsValid(f));
  f.spans.push_back({NarrativeType::kStory, 3, 4});
  EXPECT_TRUE(Has(RuleIds(f), "span-same-kind-overlap"));
}

TEST(ModelTest, SpanOutsideFragment) {
  Fragment f = fixtures::Plain({"a", "b"});
  f.spans.push_back({NarrativeType::kStory, 1, 3});
  EXPECT_TRUE(Has(RuleIds(f), "span-boundary-mismatch"));
  EXPECT_THROW(ClausesInSpan(f, f.spans[0]), std::out_of_range);
}

TEST(ModelTest, InterviewerUnits) {
  Fragment f = fixtures::Plain({"a", "b", "c"});
  f.clauses[1].speaker = Speaker::kInterviewer;
  EXPECT_TRUE(IsValid(f));
  f.spans.push_back({NarrativeType::kStory, 1, 3});
  EXPECT_TRUE(Has(RuleIds(f), "interviewer-unit"));
}

TEST(ModelTest, LabelsNeedASpan) {
  Fragment f = fixtures::Plain({"a", "b", "c"});
  f.clauses[2].macro = MacroLabel::kCoda;
  EXPECT_TRUE(Has(RuleIds(f), "label-outside-span"));
  f.spans.push_back({NarrativeType::kStory, 2, 3});
  EXPECT_TRUE(IsValid(f));
}

TEST(ModelTest, HypotheticalClausesCarryNoLabels) {
  Fragment f = fixtures::Plain({"a", "b", "c"});
  f.spans.push_back({NarrativeType::kHypothetical, 1, 2});
  f.clauses[0].micro = MicroLabel::kNarrative;
  f.clauses[1].macro = MacroLabel::kComplication;
  const auto ids = RuleIds(f);
  EXPECT_TRUE(Has(ids, "hypothetical-no-micro"));
  EXPECT_TRUE(Has(ids, "hypothetical-no-macro"));
  // A clause that is also in a story span may be labeled.
  f.spans.push_back({NarrativeType::kStory, 1, 3});
  EXPECT_TRUE(IsValid(f));
}

TEST(ModelTest, ClauseIdsAndText) {
  Fragment f = fixtures::Plain({"a", " ", "c"});
  f.clauses[2].id = 7;
  const auto ids = RuleIds(f);
  EXPECT_TRUE(Has(ids, "clause-text-empty"));
  EXPECT_TRUE(Has(ids, "clause-id-sequence"));
}

TEST(ModelTest, ViolationOrderIgnoresSpanOrder) {
  Fragment f = fixtures::Plain({"a", "b", "c", "d"});
  f.spans = {{NarrativeType::kStory, 3, 3}, {NarrativeType::kStory, 1, 1}};
  Fragment g = f;
  std::reverse(g.spans.begin(), g.spans.end());
  const auto a = CheckFragment(f);
  const auto b = CheckFragment(g);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].clause, b[i].clause);
}

TEST(ModelTest, SpanLengths) {
  Fragment f = fixtures::Plain({"a", "b", "c", "d", "e"});
  f.spans = {{NarrativeType::kStory, 1, 2}, {NarrativeType::kStory, 3, 5}};
  Fragment g = fixtures::Plain({"a", "b"});
  g.spans = {{NarrativeType::kHabitual, 1, 2}};
  const std::vector<Fragment> corpus = {f, g};
  const auto stats = SpanLengths(corpus);
  EXPECT_EQ(stats.at(NarrativeType::kStory).count, 2);
  EXPECT_EQ(*stats.at(NarrativeType::kStory).mean_length(), Rational(5, 2));
  EXPECT_EQ(stats.at(NarrativeType::kHabitual).count, 1);
  EXPECT_EQ(stats.at(NarrativeType::kHypothetical).count, 0);
  EXPECT_FALSE(stats.at(NarrativeType::kHypothetical).mean_length());
}

}  // namespace
}  // namespace labov
