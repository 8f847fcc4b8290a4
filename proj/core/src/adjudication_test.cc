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

#include "labov/adjudication.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "labov/errors.h"
#include "support/fixtures.h"
#include "support/synth.h"

namespace labov {
namespace {

using fixtures::MicroRow;
using fixtures::VotingBundle;

const VoteOutcome *Find(const std::vector<VoteOutcome> &outcomes,
                        VoteField field, int clause) {
  for (const auto &o : outcomes) {
    if (o.field == field && o.unit.clause == clause) return &o;
  }
  return nullptr;
}

std::vector<std::optional<std::string>> Votes(
    std::initializer_list<const char *> tokens) {
  std::vector<std::optional<std::string>> out;
  for (const char *t : tokens) {
    out.push_back(t ? std::optional<std::string>(t) : std::nullopt);
  }
  return out;
}

TEST(AdjudicationTest, TallyFixtures) {
  auto o = TallyVotes({"f", 1}, VoteField::kMicro, Votes({"N", "N", "F"}));
  ASSERT_TRUE(o);
  EXPECT_EQ(o->decided, "N");
  EXPECT_FALSE(o->needs_discussion);
  EXPECT_EQ(o->basis, "majority");

  o = TallyVotes({"f", 1}, VoteField::kMicro, Votes({"N", "F", "R"}));
  EXPECT_FALSE(o->decided);
  EXPECT_TRUE(o->needs_discussion);
  EXPECT_EQ(o->basis, "no-agreement");

  o = TallyVotes({"f", 1}, VoteField::kMicro, Votes({"N", "N", "N"}));
  EXPECT_TRUE(o->unanimous);
  EXPECT_EQ(o->basis, "unanimous");

  o = TallyVotes({"f", 1}, VoteField::kMicro, Votes({"N", "N", nullptr}));
  EXPECT_EQ(o->decided, "N");
  EXPECT_FALSE(o->unanimous);
  EXPECT_EQ(o->votes, (std::vector<std::string>{"N", "N"}));

  o = TallyVotes({"f", 1}, VoteField::kMicro, Votes({"N", "N", "F", "F"}));
  EXPECT_TRUE(o->needs_discussion);
  EXPECT_EQ(o->basis, "tie");

  EXPECT_FALSE(TallyVotes({"f", 1}, VoteField::kMicro, Votes({nullptr, nullptr})));
}

TEST(AdjudicationTest, BundleVote) {
  Bundle b = VotingBundle({MicroRow({"N", "N", "F"}), MicroRow({"N", "F", "F"}),
                           MicroRow({"F", "R", "F"})});
  auto outcomes = MajorityVote(b, VoteField::kMicro);
  ASSERT_EQ(outcomes.size(), 3u);
  EXPECT_EQ(Find(outcomes, VoteField::kMicro, 1)->decided, "N");
  EXPECT_TRUE(Find(outcomes, VoteField::kMicro, 2)->needs_discussion);
  EXPECT_TRUE(Find(outcomes, VoteField::kMicro, 3)->unanimous);

  auto all = Adjudicate(b);
  EXPECT_EQ(all.front().field, VoteField::kSpanMembership);
  EXPECT_TRUE(std::all_of(all.begin(), all.end(), [](const VoteOutcome &o) {
    return o.field != VoteField::kSpanMembership || o.unanimous;
  }));
}

TEST(AdjudicationTest, NeedsTwoAlignedLayers) {
  Bundle one = VotingBundle({MicroRow({"N", "F"})});
  EXPECT_THROW(MajorityVote(one, VoteField::kMicro), ValidationError);
  Bundle two = VotingBundle({MicroRow({"N", "F"}), MicroRow({"N", "F"})});
  two.layers[1].clause_boundaries = Segmentation({two.reference->atoms()});
  two.layers[1].label_basis = LabelBasis::kOwn;
  EXPECT_THROW(MajorityVote(two, VoteField::kMicro), ValidationError);
}

TEST(AdjudicationTest, SpanMembership) {
  Fragment a = fixtures::Plain({"a", "b", "c", "d", "e"});
  Fragment b = a, c = a;
  a.spans = {{NarrativeType::kStory, 1, 4}};
  b.spans = {{NarrativeType::kStory, 2, 5}};
  c.spans = {{NarrativeType::kStory, 4, 5}};
  auto outcomes =
      MajorityVote(VotingBundle({a, b, c}), VoteField::kSpanMembership);
  // Votes per clause: 1, 2, 2, 3, 2 of 3.
  ASSERT_EQ(outcomes.size(), 5u);
  EXPECT_EQ(outcomes[0].decided, "out");
  for (int i = 1; i < 5; ++i) EXPECT_EQ(outcomes[i].decided, "in") << i;
  EXPECT_TRUE(outcomes[3].unanimous);

  // Only clause 3 is in by majority: a lone clause goes to discussion.
  a.spans = {{NarrativeType::kStory, 2, 3}};
  b.spans = {{NarrativeType::kStory, 3, 4}};
  c.spans = {};
  outcomes = MajorityVote(VotingBundle({a, b, c}), VoteField::kSpanMembership);
  auto *lone = Find(outcomes, VoteField::kSpanMembership, 3);
  ASSERT_NE(lone, nullptr);
  EXPECT_TRUE(lone->needs_discussion);
  EXPECT_EQ(lone->basis, "short-run");
}

TEST(AdjudicationTest, ResolveDiscussion) {
  auto pending = *TallyVotes({"f", 2}, VoteField::kMicro, Votes({"N", "F", "R"}));
  auto resolved = ResolveDiscussion(pending, "F", {"ann1", "ann2"}, "cycle step",
                                    "2026-01-05");
  EXPECT_EQ(resolved.decided, "F");
  EXPECT_FALSE(resolved.needs_discussion);
  EXPECT_EQ(resolved.basis, "discussion");
  ASSERT_TRUE(resolved.audit);
  EXPECT_EQ(resolved.audit->resolvers.size(), 2u);
  EXPECT_THROW(ResolveDiscussion(resolved, "N", {"x"}, "", ""), ValidationError);
  EXPECT_THROW(ResolveDiscussion(pending, "Q", {"x"}, "", ""), ValidationError);
  EXPECT_THROW(ResolveDiscussion(pending, "Com", {"x"}, "", ""), ValidationError);
  EXPECT_THROW(ResolveDiscussion(pending, "N", {}, "", ""), ValidationError);
}

TEST(AdjudicationTest, ResolutionsAndGold) {
  Bundle b = VotingBundle({MicroRow({"N", "N", "F"}), MicroRow({"N", "F", "F"}),
                           MicroRow({"F", "R", "F"})});
  auto outcomes = Adjudicate(b);
  EXPECT_THROW(BuildGold(b, outcomes), ValidationError);
  auto resolutions = ResolutionsFromJson(nlohmann::json::parse(R"({
    "resolutions": [{"fragment_id": "frag", "clause": 2, "field": "micro",
                     "label": "R", "resolvers": ["ann1", "ann3"],
                     "note": "", "when": "2026-01-05"}]})"));
  ApplyResolutions(outcomes, resolutions);
  Fragment gold = BuildGold(b, outcomes);
  EXPECT_TRUE(IsValid(gold));
  ASSERT_EQ(gold.clauses.size(), 3u);
  EXPECT_EQ(gold.clauses[0].micro, MicroLabel::kNarrative);
  EXPECT_EQ(gold.clauses[1].micro, MicroLabel::kRestricted);
  EXPECT_EQ(gold.clauses[2].micro, MicroLabel::kFree);
  ASSERT_EQ(gold.spans.size(), 1u);
  EXPECT_EQ(gold.spans[0], (NarrativeSpan{NarrativeType::kStory, 1, 3}));

  Resolution stray;
  stray.unit = {"frag", 3};
  stray.label = "N";
  stray.resolvers = {"x"};
  EXPECT_THROW(ApplyResolutions(outcomes, std::span(&stray, 1)), ValidationError);
  EXPECT_THROW(ResolutionsFromJson(nlohmann::json::parse(
                   R"([{"fragment_id": "f", "clause": 1, "field": "colour"}])")),
               ParseError);
}

TEST(AdjudicationTest, PermutationInvariance) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Bundle b = synth::RandomVotingBundle(rng, 2 + i % 4);
    auto expected = Adjudicate(b);
    std::shuffle(b.layers.begin(), b.layers.end(), rng);
    EXPECT_EQ(Adjudicate(b), expected) << i;
  }
}

TEST(AdjudicationTest, OutcomeJsonRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    for (const auto &o : Adjudicate(synth::RandomVotingBundle(rng, 3))) {
      EXPECT_EQ(OutcomeFromJson(OutcomeToJson(o)), o);
    }
  }
  EXPECT_THROW(OutcomeFromJson(nlohmann::json::parse(
                   R"({"fragment_id": "f", "clause": 1, "field": "micro",
                       "decided": "N", "needs_discussion": true})")),
               ParseError);
}

TEST(AdjudicationTest, RoundPercent) {
  EXPECT_EQ(RoundPercent(Rational(1, 3), PercentRounding::kNearest), 33);
  EXPECT_EQ(RoundPercent(Rational(2, 3), PercentRounding::kNearest), 67);
  EXPECT_EQ(RoundPercent(Rational(2, 3), PercentRounding::kFloor), 66);
  EXPECT_EQ(RoundPercent(Rational(1, 200), PercentRounding::kNearest), 1);
  EXPECT_EQ(RoundPercent(Rational(1), PercentRounding::kNearest), 100);
}

TEST(AdjudicationTest, CorpusStatsFixture) {
  const auto gold = fixtures::StatsFixture();
  for (const auto &f : gold) ASSERT_TRUE(IsValid(f)) << f.fragment_id;
  auto stats = CorpusStats(gold);
  EXPECT_EQ(stats.fragments, 3);
  EXPECT_EQ(stats.micro_labeled, 300);
  EXPECT_EQ(stats.micro[MicroLabel::kNarrative].count, 145);
  EXPECT_EQ(stats.micro[MicroLabel::kFree].count, 103);
  EXPECT_EQ(stats.micro[MicroLabel::kRestricted].count, 52);
  EXPECT_EQ(stats.micro[MicroLabel::kNarrative].percent, 48);
  EXPECT_EQ(stats.micro[MicroLabel::kFree].percent, 34);
  EXPECT_EQ(stats.micro[MicroLabel::kRestricted].percent, 17);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kAbstract], 1);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kOrientation], 104);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kComplication], 142);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kEvaluation], 51);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kResolution], 1);
  EXPECT_EQ(stats.macro_counts[MacroLabel::kCoda], 1);
  EXPECT_EQ(stats.spans[NarrativeType::kStory].count, 3);
  EXPECT_EQ(stats.spans[NarrativeType::kStory].mean_length(), Rational(200, 3));
  EXPECT_EQ(stats.spans[NarrativeType::kHabitual].mean_length(), Rational(100));
  EXPECT_EQ(stats.spans[NarrativeType::kHypothetical].mean_length(), Rational(2));
  EXPECT_EQ(stats.total_clauses, 302);
}

TEST(AdjudicationTest, PaperCountsUnderBothRoundings) {
  // 193 / 139 / 68 of 400 micro-labeled clauses.
  std::vector<std::string> row;
  row.insert(row.end(), 193, "N");
  row.insert(row.end(), 139, "F");
  row.insert(row.end(), 68, "R");
  std::vector<Fragment> gold{MicroRow(row)};
  auto floor = CorpusStats(gold, PercentRounding::kFloor);
  EXPECT_EQ(floor.micro[MicroLabel::kNarrative].percent, 48);
  EXPECT_EQ(floor.micro[MicroLabel::kFree].percent, 34);
  EXPECT_EQ(floor.micro[MicroLabel::kRestricted].percent, 17);
  auto nearest = CorpusStats(gold, PercentRounding::kNearest);
  EXPECT_EQ(nearest.micro[MicroLabel::kFree].percent, 35);
}

TEST(AdjudicationTest, EmptyCorpus) {
  auto stats = CorpusStats({});
  EXPECT_EQ(stats.fragments, 0);
  EXPECT_EQ(stats.micro_labeled, 0);
  EXPECT_EQ(stats.micro[MicroLabel::kNarrative].percent, 0);
  EXPECT_FALSE(stats.spans[NarrativeType::kStory].mean_length());
}

}  // namespace
}  // namespace labov
