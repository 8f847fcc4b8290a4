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

#include "labov/lint.h"

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "labov/errors.h"
#include "support/fixtures.h"
#include "support/lint_cases.h"
#include "support/synth.h"

namespace labov {
namespace {

bool Fires(const std::vector<LintFinding> &findings, std::string_view rule) {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const LintFinding &f) { return f.rule_id == rule; });
}

TEST(LintTest, EveryCaseBehaves) {
  for (const auto &c : fixtures::LintCases()) {
    auto findings = LintFragment(c.fragment);
    EXPECT_EQ(Fires(findings, c.rule_id), c.fires)
        << c.rule_id << (c.fires ? " should fire" : " should stay quiet");
  }
}

TEST(LintTest, EveryImplementedRuleHasBothCases) {
  auto cases = fixtures::LintCases();
  for (const auto &rule : RuleTable()) {
    if (!rule.implemented) continue;
    bool firing = false, quiet = false;
    for (const auto &c : cases) {
      if (c.rule_id != rule.id) continue;
      (c.fires ? firing : quiet) = true;
    }
    EXPECT_TRUE(firing && quiet) << rule.id;
  }
}

TEST(LintTest, RuleTable) {
  std::set<std::string_view> ids;
  int implemented = 0;
  for (const auto &rule : RuleTable()) {
    EXPECT_TRUE(ids.insert(rule.id).second) << rule.id;
    EXPECT_FALSE(rule.guideline_ref.empty());
    implemented += rule.implemented;
  }
  EXPECT_EQ(implemented, 19);
  const RuleInfo *reserved = FindRule("coda-reference-time");
  ASSERT_NE(reserved, nullptr);
  EXPECT_FALSE(reserved->implemented);
  EXPECT_EQ(FindRule("no-such-rule"), nullptr);
}

TEST(LintTest, FindingsCiteRegisteredRulesWithTheirSeverity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    synth::FragmentOptions opts;
    opts.valid = i % 2 == 0;
    opts.representable = i % 4 != 1;
    for (const auto &f : LintFragment(synth::RandomFragment(rng, opts))) {
      const RuleInfo *rule = FindRule(f.rule_id);
      ASSERT_NE(rule, nullptr) << f.rule_id;
      EXPECT_TRUE(rule->implemented);
      EXPECT_EQ(rule->severity, f.severity);
      EXPECT_EQ(rule->guideline_ref, f.guideline_ref);
    }
  }
}

TEST(LintTest, StructureErrorsMatchValidation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    synth::FragmentOptions opts;
    opts.valid = i % 3 == 0;
    opts.representable = i % 2 == 0;
    Fragment f = synth::RandomFragment(rng, opts);
    auto findings = LintStructure(f);
    ASSERT_EQ(HasErrors(findings), !IsValid(f)) << i;
    std::multiset<std::string> errors, violations;
    for (const auto &x : findings) {
      if (x.severity == Severity::kError) errors.insert(x.rule_id);
    }
    for (const auto &v : CheckFragment(f)) violations.insert(v.rule_id);
    EXPECT_EQ(errors, violations) << i;
  }
}

TEST(LintTest, Table1IsClean) {
  EXPECT_TRUE(LintFragment(fixtures::Table1()).empty());
}

TEST(LintTest, CuesSkipInterviewerTurns) {
  Fragment f = fixtures::Plain(
      {"tokyo ni kita toki wa mainichi isogashikatta", "sou desu ka"});
  EXPECT_TRUE(Fires(LintFragmentCues(f), "formal-noun-topic-split"));
  f.clauses[0].speaker = Speaker::kInterviewer;
  EXPECT_TRUE(LintFragmentCues(f).empty());
  EXPECT_FALSE(Fires(HintSpanOnsets(fixtures::Plain({"sono toki wa"})),
                     "formal-noun-topic-split"));
  Fragment onset = fixtures::Plain({"sono toki wa ne", "un"});
  onset.clauses[0].speaker = Speaker::kInterviewer;
  EXPECT_TRUE(HintSpanOnsets(onset).empty());
}

TEST(LintTest, SegmentationCuesReportBoundaries) {
  const std::string raw = "haha ga kita toki ga ichiban";
  // Boundary right after "toki ga " lands inside the check window.
  Segmentation seg({21, 7});
  auto findings = LintSegmentationCues(raw, seg);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule_id, "formal-noun-subject-merge");
  EXPECT_EQ(findings[0].location.boundary, 21);
  EXPECT_TRUE(LintSegmentationCues(raw, Segmentation({28})).empty());
  AtomRange turn{0, 28};
  EXPECT_TRUE(LintSegmentationCues(raw, seg, std::span(&turn, 1)).empty());
}

TEST(LintTest, JapaneseScriptCues) {
  EXPECT_TRUE(Fires(LintFragment(fixtures::Plain({"東京に来たときは毎日忙しかった"})),
                    "formal-noun-topic-split"));
  EXPECT_FALSE(Fires(LintFragment(fixtures::Plain({"東京に来たときは", "毎日忙しかった"})),
                     "formal-noun-topic-split"));
  EXPECT_TRUE(Fires(LintFragment(fixtures::Plain({"彼は「もう", "帰ろう」言った"})),
                    "unmarked-quote-merge"));
  EXPECT_FALSE(Fires(LintFragment(fixtures::Plain({"彼は「もう", "帰ろう」と言った"})),
                     "unmarked-quote-merge"));
  EXPECT_TRUE(Fires(LintFragment(fixtures::Plain({"その時は", "うん"})),
                    "possible-onset"));
}

TEST(LintTest, DisabledRulesAreDropped) {
  Fragment f = fixtures::Plain({"sono toki wa ne", "un"});
  LintConfig config = LintConfig::Default();
  config.disabled.insert("possible-onset");
  EXPECT_FALSE(Fires(LintFragment(f, config), "possible-onset"));
}

TEST(LintTest, ConfigFromJson) {
  auto config = LintConfig::FromJson(nlohmann::json::parse(
      R"({"onset_markers": [], "disabled": ["coda-position"]})"));
  EXPECT_TRUE(config.onset_markers.empty());
  EXPECT_EQ(config.formal_nouns, LintConfig::Default().formal_nouns);
  EXPECT_TRUE(config.disabled.count("coda-position"));
  EXPECT_TRUE(
      HintSpanOnsets(fixtures::Plain({"sono toki wa ne", "un"}), config).empty());
  EXPECT_THROW(LintConfig::FromJson(
                   nlohmann::json::parse(R"({"disabled": ["bogus"]})")),
               ParseError);
  EXPECT_THROW(LintConfig::FromJson(
                   nlohmann::json::parse(R"({"formal_nouns": "toki"})")),
               ParseError);
}

TEST(LintTest, FindingJson) {
  Fragment f = fixtures::Plain({"a", "b"});
  f.spans = {{NarrativeType::kStory, 2, 2}};
  auto findings = LintFragment(f);
  ASSERT_FALSE(findings.empty());
  auto json = FindingToJson(findings[0]);
  EXPECT_EQ(json["rule_id"], "span-min-length");
  EXPECT_EQ(json["severity"], "error");
  EXPECT_EQ(json["location"]["fragment_id"], "frag");
}

}  // namespace
}  // namespace labov
