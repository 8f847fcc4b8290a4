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

#include "labov/wizard.h"

#include <gtest/gtest.h>

#include "labov/errors.h"
#include "support/fixtures.h"

namespace labov {
namespace {

using json = nlohmann::json;

TEST(WizardTest, ExamplesFromTheChart) {
  EXPECT_EQ(DecideMicro({false, true, std::nullopt}), MicroLabel::kNarrative);
  EXPECT_EQ(DecideMicro({false, false, true}), MicroLabel::kFree);
  EXPECT_EQ(DecideMicro({false, false, false}), MicroLabel::kRestricted);
  EXPECT_EQ(DecideMicro({true, std::nullopt, std::nullopt}), std::nullopt);
  // Answers off the path are ignored.
  EXPECT_EQ(DecideMicro({true, true, false}), std::nullopt);
}

TEST(WizardTest, UnansweredQuestionOnPathThrows) {
  EXPECT_THROW(DecideMicro({}), ValidationError);
  EXPECT_THROW(DecideMicro({false, false, std::nullopt}), ValidationError);
}

TEST(WizardTest, NextWalksThePath) {
  ChartAnswers answers;
  auto q = NextQuestion(answers);
  EXPECT_FALSE(q.terminal);
  EXPECT_EQ(q.node_id, kQuestionHypothetical);
  EXPECT_EQ(q.step, 1);
  EXPECT_FALSE(q.question_en.empty());
  EXPECT_FALSE(q.question_ja.empty());
  answers[std::string(kQuestionHypothetical)] = false;
  q = NextQuestion(answers);
  EXPECT_EQ(q.node_id, kQuestionEvent);
  EXPECT_EQ(q.step, 2);
  EXPECT_FALSE(q.examples.empty());
  answers[std::string(kQuestionEvent)] = false;
  q = NextQuestion(answers);
  EXPECT_EQ(q.node_id, kQuestionEntirePeriod);
  answers[std::string(kQuestionEntirePeriod)] = true;
  q = NextQuestion(answers);
  EXPECT_TRUE(q.terminal);
  EXPECT_EQ(q.outcome.label, MicroLabel::kFree);
}

TEST(WizardTest, EveryCombinationTerminatesWithinThreeQuestions) {
  const MicroChart &chart = MicroChart::Default();
  EXPECT_LE(chart.MaxDepth(), 3);
  for (int bits = 0; bits < 8; ++bits) {
    ChartAnswers answers{{std::string(kQuestionHypothetical), bits & 1},
                         {std::string(kQuestionEvent), (bits & 2) != 0},
                         {std::string(kQuestionEntirePeriod), (bits & 4) != 0}};
    auto q = chart.Next(answers);
    EXPECT_TRUE(q.terminal);
    EXPECT_LE(q.step, 3);
    EXPECT_TRUE(chart.Decide(answers).has_value());
  }
  auto paths = chart.Paths();
  EXPECT_EQ(paths.size(), 4u);
  for (const auto &[answers, outcome] : paths) {
    EXPECT_EQ(chart.Decide(answers), outcome);
  }
}

TEST(WizardTest, Table1Consistency) {
  Fragment f = fixtures::Table1();
  auto answers = fixtures::Table1Answers();
  ASSERT_EQ(answers.size(), f.clauses.size());
  for (size_t i = 0; i < answers.size(); ++i) {
    EXPECT_EQ(DecideMicro(answers[i]), f.clauses[i].micro) << "clause " << i + 1;
  }
}

TEST(WizardTest, JsonRoundTrip) {
  auto chart = MicroChart::FromJson(json::parse(DefaultChartJson()));
  EXPECT_EQ(chart.start(), MicroChart::Default().start());
  EXPECT_EQ(chart.nodes().size(), 3u);
  auto answers = AnswersFromJson(json::parse(
      R"({"hypothetical": false, "event": true})"));
  auto q = QuestionToJson(chart.Next(answers));
  EXPECT_EQ(q["terminal"], true);
  EXPECT_EQ(q["label"], "N");
  q = QuestionToJson(chart.Next({}));
  EXPECT_EQ(q["node_id"], "hypothetical");
  EXPECT_THROW(AnswersFromJson(json::parse(R"({"event": "yes"})")), ParseError);
}

TEST(WizardTest, CustomChartsAreValidated) {
  const json two = json::parse(R"({
    "start": "a",
    "nodes": [
      {"id": "a", "question_en": "A?", "yes": {"outcome": "N"},
       "no": {"node": "b"}},
      {"id": "b", "question_en": "B?", "yes": {"outcome": "F"},
       "no": {"outcome": "R"}}
    ]})");
  auto chart = MicroChart::FromJson(two);
  EXPECT_EQ(chart.MaxDepth(), 2);
  EXPECT_EQ(chart.Decide({{"a", false}, {"b", false}})->label,
            MicroLabel::kRestricted);

  json cyclic = two;
  cyclic["nodes"][1]["no"] = {{"node", "a"}};
  EXPECT_THROW(MicroChart::FromJson(cyclic), ParseError);
  json dangling = two;
  dangling["nodes"][1]["no"] = {{"node", "zzz"}};
  EXPECT_THROW(MicroChart::FromJson(dangling), ParseError);
  json bad_label = two;
  bad_label["nodes"][0]["yes"] = {{"outcome", "X"}};
  EXPECT_THROW(MicroChart::FromJson(bad_label), ParseError);
  json bad_start = two;
  bad_start["start"] = "nope";
  EXPECT_THROW(MicroChart::FromJson(bad_start), ParseError);
}

}  // namespace
}  // namespace labov
