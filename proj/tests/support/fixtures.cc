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

#include "fixtures.h"

#include "labov/lat_format.h"

namespace labov::fixtures {

std::string DataPath(const std::string &name) {
  return std::string(LABOV_TEST_DATA_DIR) + "/" + name;
}

Fragment Table1() { return ReadLatFile(DataPath("table1.lat.tsv")); }

Fragment Plain(const std::vector<std::string> &texts,
               const std::string &fragment_id) {
  Fragment f;
  f.fragment_id = fragment_id;
  for (const std::string &t : texts) {
    Clause c;
    c.id = static_cast<int>(f.clauses.size()) + 1;
    c.text = t;
    f.clauses.push_back(std::move(c));
  }
  return f;
}

std::vector<ChartAnswer> Table1Answers() {
  const ChartAnswer event{false, true, std::nullopt};
  const ChartAnswer whole{false, false, true};
  const ChartAnswer part{false, false, false};
  return {whole, whole, event, event, whole, part, event, event, whole, whole};
}

Bundle VotingBundle(const std::vector<Fragment> &versions) {
  Bundle bundle = BundleFromFragment(versions.at(0));
  bundle.gold.reset();
  for (size_t i = 0; i < versions.size(); ++i) {
    bundle.layers.push_back(LayerFromFragment(bundle, versions[i],
                                              "ann" + std::to_string(i + 1)));
  }
  return bundle;
}

Fragment MicroRow(const std::vector<std::string> &micro,
                  const std::string &fragment_id) {
  std::vector<std::string> texts;
  for (size_t i = 0; i < micro.size(); ++i) {
    texts.push_back("c" + std::to_string(i + 1));
  }
  Fragment f = Plain(texts, fragment_id);
  for (size_t i = 0; i < micro.size(); ++i) {
    f.clauses[i].micro = ParseMicro(micro[i]);
  }
  f.spans = {{NarrativeType::kStory, 1, static_cast<int>(micro.size())}};
  return f;
}

namespace {

// n_narr N clauses, then n_free F, then n_restr R, from clause `first`.
void LabelRun(Fragment &f, int first, int n_narr, int n_free, int n_restr) {
  int id = first;
  auto put = [&](int count, MicroLabel micro, MacroLabel macro) {
    for (int k = 0; k < count; ++k, ++id) {
      f.clauses[id - 1].micro = micro;
      f.clauses[id - 1].macro = macro;
    }
  };
  put(n_narr, MicroLabel::kNarrative, MacroLabel::kComplication);
  put(n_free, MicroLabel::kFree, MacroLabel::kOrientation);
  put(n_restr, MicroLabel::kRestricted, MacroLabel::kEvaluation);
}

Fragment Numbered(const std::string &id, int clauses) {
  std::vector<std::string> texts;
  for (int i = 1; i <= clauses; ++i) texts.push_back("c" + std::to_string(i));
  return Plain(texts, id);
}

}  // namespace

std::vector<Fragment> StatsFixture() {
  Fragment s1 = Numbered("s1", 120);
  LabelRun(s1, 1, 30, 20, 10);
  LabelRun(s1, 61, 30, 20, 10);
  s1.clauses[0].macro = MacroLabel::kAbstract;
  s1.clauses[119].macro = MacroLabel::kCoda;
  s1.clauses[79].macro = MacroLabel::kOrientation;
  s1.spans = {{NarrativeType::kStory, 1, 60}, {NarrativeType::kStory, 61, 120}};

  Fragment s2 = Numbered("s2", 100);
  LabelRun(s2, 1, 50, 35, 15);
  s2.clauses[49].macro = MacroLabel::kResolution;
  s2.spans = {{NarrativeType::kHabitual, 1, 100}};

  Fragment s3 = Numbered("s3", 82);
  LabelRun(s3, 1, 35, 28, 17);
  s3.spans = {{NarrativeType::kStory, 1, 80},
              {NarrativeType::kHypothetical, 81, 82}};
  return {s1, s2, s3};
}

}  // namespace labov::fixtures
