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

#include "lint_cases.h"

#include "fixtures.h"

namespace labov::fixtures {
namespace {

using NT = NarrativeType;

Fragment WithSpans(Fragment f, std::vector<NarrativeSpan> spans) {
  f.spans = std::move(spans);
  return f;
}

Fragment Labeled(const std::vector<std::pair<MicroLabel, MacroLabel>> &labels,
                 std::vector<NarrativeSpan> spans) {
  std::vector<std::string> texts;
  for (size_t i = 0; i < labels.size(); ++i) {
    texts.push_back("clause " + std::to_string(i + 1));
  }
  Fragment f = Plain(texts);
  for (size_t i = 0; i < labels.size(); ++i) {
    f.clauses[i].micro = labels[i].first;
    f.clauses[i].macro = labels[i].second;
  }
  f.spans = std::move(spans);
  return f;
}

constexpr auto N = MicroLabel::kNarrative;
constexpr auto F = MicroLabel::kFree;
constexpr auto R = MicroLabel::kRestricted;
constexpr auto Abs = MacroLabel::kAbstract;
constexpr auto Ori = MacroLabel::kOrientation;
constexpr auto Com = MacroLabel::kComplication;
constexpr auto Eva = MacroLabel::kEvaluation;
constexpr auto Res = MacroLabel::kResolution;
constexpr auto Cod = MacroLabel::kCoda;

}  // namespace

std::vector<LintCase> LintCases() {
  std::vector<LintCase> cases;
  auto add = [&cases](std::string rule, bool fires, Fragment f) {
    cases.push_back({std::move(rule), fires, std::move(f)});
  };
  const Fragment abc = Plain({"a", "b", "c"});

  Fragment bad_id = abc;
  bad_id.clauses[2].id = 5;
  add("clause-id-sequence", true, bad_id);
  add("clause-id-sequence", false, abc);

  Fragment blank = abc;
  blank.clauses[1].text = "  ";
  add("clause-text-empty", true, blank);
  add("clause-text-empty", false, abc);

  Fragment ir = WithSpans(abc, {{NT::kStory, 1, 3}});
  ir.clauses[1].speaker = Speaker::kInterviewer;
  ir.clauses[1].macro = Eva;
  add("interviewer-unit", true, ir);
  Fragment ir_ok = WithSpans(abc, {{NT::kStory, 2, 3}});
  ir_ok.clauses[0].speaker = Speaker::kInterviewer;
  add("interviewer-unit", false, ir_ok);

  add("span-boundary-mismatch", true, WithSpans(abc, {{NT::kStory, 2, 5}}));
  add("span-boundary-mismatch", false, WithSpans(abc, {{NT::kStory, 1, 3}}));

  add("span-min-length", true, WithSpans(abc, {{NT::kStory, 2, 2}}));
  add("span-min-length", false, WithSpans(abc, {{NT::kStory, 2, 3}}));

  const Fragment abcd = Plain({"a", "b", "c", "d"});
  add("span-same-kind-overlap", true,
      WithSpans(abcd, {{NT::kStory, 1, 3}, {NT::kStory, 2, 4}}));
  add("span-same-kind-overlap", false,
      WithSpans(abcd, {{NT::kStory, 1, 2}, {NT::kStory, 3, 4}}));

  Fragment outside = WithSpans(abc, {{NT::kStory, 1, 2}});
  outside.clauses[2].micro = F;
  add("label-outside-span", true, outside);
  Fragment inside = WithSpans(abc, {{NT::kStory, 2, 3}});
  inside.clauses[2].micro = F;
  add("label-outside-span", false, inside);

  Fragment hypo_micro = WithSpans(abc, {{NT::kHypothetical, 1, 3}});
  hypo_micro.clauses[1].micro = N;
  add("hypothetical-no-micro", true, hypo_micro);
  add("hypothetical-no-micro", false,
      WithSpans(abc, {{NT::kHypothetical, 1, 3}}));

  Fragment hypo_macro = WithSpans(abc, {{NT::kHypothetical, 1, 3}});
  hypo_macro.clauses[1].macro = Com;
  add("hypothetical-no-macro", true, hypo_macro);
  Fragment hypo_in_story =
      WithSpans(abc, {{NT::kHypothetical, 1, 3}, {NT::kStory, 1, 3}});
  hypo_in_story.clauses[1].macro = Com;
  add("hypothetical-no-macro", false, hypo_in_story);

  add("span-cross-kind-overlap", true,
      WithSpans(abcd, {{NT::kStory, 1, 3}, {NT::kHabitual, 2, 4}}));
  add("span-cross-kind-overlap", false,
      WithSpans(abcd, {{NT::kStory, 1, 2}, {NT::kHabitual, 3, 4}}));

  add("formal-noun-topic-split", true,
      Plain({"tokyo ni kita toki wa mainichi isogashikatta"}));
  add("formal-noun-topic-split", false,
      Plain({"tokyo ni kita toki wa", "mainichi isogashikatta"}));

  add("formal-noun-subject-merge", true,
      Plain({"haha ga kita toki ga", "ichiban ureshikatta"}));
  add("formal-noun-subject-merge", false,
      Plain({"haha ga kita toki ga ichiban ureshikatta"}));

  add("unmarked-quote-merge", true,
      Plain({"kare wa 「mou", "kaerou」 itta"}));
  add("unmarked-quote-merge", false,
      Plain({"kare wa 「mou", "kaerou」 to itta"}));

  add("abstract-position", true,
      Labeled({{N, Com}, {N, Com}, {F, Ori}, {F, Abs}, {N, Com}, {N, Res}},
              {{NT::kStory, 1, 6}}));
  add("abstract-position", false, Table1());

  add("coda-position", true,
      Labeled({{F, Ori}, {F, Cod}, {N, Com}, {N, Com}, {N, Com}, {N, Com},
               {N, Com}, {N, Com}, {N, Res}, {F, Eva}},
              {{NT::kStory, 1, 10}}));
  add("coda-position", false, Table1());

  add("complication-micro-mismatch", true,
      Labeled({{F, Ori}, {F, Com}, {N, Res}}, {{NT::kStory, 1, 3}}));
  add("complication-micro-mismatch", false, Table1());

  add("resolution-micro-mismatch", true,
      Labeled({{F, Ori}, {N, Com}, {R, Res}}, {{NT::kStory, 1, 3}}));
  add("resolution-micro-mismatch", false, Table1());

  add("span-no-complication", true,
      Labeled({{F, Ori}, {R, Eva}, {F, Cod}}, {{NT::kStory, 1, 3}}));
  add("span-no-complication", false, Table1());

  add("possible-onset", true,
      Plain({"sono toki wa ne", "un"}));
  add("possible-onset", false,
      WithSpans(Plain({"sono toki wa ne", "un"}), {{NT::kStory, 1, 2}}));
  return cases;
}

}  // namespace labov::fixtures
