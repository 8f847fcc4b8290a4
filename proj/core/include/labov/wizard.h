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

#ifndef LABOV_WIZARD_H_
#define LABOV_WIZARD_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labov/model.h"

namespace labov {

// Where a chart branch leads: another question or a final outcome.
struct ChartEdge {
  std::string node;  // next question id; empty for an outcome
  std::optional<MicroLabel> label;
  bool no_label = false;  // outcome: the clause gets no micro label
};

struct ChartNode {
  std::string id;
  std::string question_en;
  std::string question_ja;
  std::vector<std::string> examples;
  ChartEdge yes;
  ChartEdge no;
};

// Answers keyed by question id.
using ChartAnswers = std::map<std::string, bool>;

struct ChartOutcome {
  std::optional<MicroLabel> label;  // nullopt: no micro label

  bool operator==(const ChartOutcome &) const = default;
};

// What to ask next. When terminal is true the chart has reached an outcome
// and question fields are empty.
struct QuestionDescriptor {
  bool terminal = false;
  std::string node_id;
  std::string question_en;
  std::string question_ja;
  std::vector<std::string> examples;
  int step = 0;  // 1-based position on the path
  ChartOutcome outcome;
};

// The micro-label decision chart, loaded from data. Construction validates
// that every edge resolves, the graph is acyclic and every path ends.
class MicroChart {
 public:
  // Throws ParseError on a malformed or cyclic chart.
  static MicroChart FromJson(const nlohmann::json &json);
  static MicroChart FromFile(const std::string &path);
  // The built-in three-question chart.
  static const MicroChart &Default();

  // Outcome for complete answers, nullopt while a question on the path is
  // unanswered.
  std::optional<ChartOutcome> Decide(const ChartAnswers &answers) const;
  QuestionDescriptor Next(const ChartAnswers &answers) const;

  // Every root-to-outcome path with the answers that lead along it.
  std::vector<std::pair<ChartAnswers, ChartOutcome>> Paths() const;
  int MaxDepth() const;

  const std::string &start() const { return start_; }
  const std::vector<ChartNode> &nodes() const { return nodes_; }
  const ChartNode *Find(std::string_view id) const;

 private:
  std::string start_;
  std::vector<ChartNode> nodes_;
};

// Answers to the built-in chart. Later questions are only consulted when the
// path reaches them.
struct ChartAnswer {
  std::optional<bool> in_hypothetical_only;
  std::optional<bool> reports_event_or_discovery;
  std::optional<bool> holds_entire_period;

  ChartAnswers ToAnswers() const;
};

// Built-in node ids.
inline constexpr std::string_view kQuestionHypothetical = "hypothetical";
inline constexpr std::string_view kQuestionEvent = "event";
inline constexpr std::string_view kQuestionEntirePeriod = "entire_period";

// Throws ValidationError if a question on the decision path is unanswered.
std::optional<MicroLabel> DecideMicro(const ChartAnswer &answers,
                                      const MicroChart &chart =
                                          MicroChart::Default());
QuestionDescriptor NextQuestion(const ChartAnswers &answers,
                                const MicroChart &chart = MicroChart::Default());

nlohmann::ordered_json QuestionToJson(const QuestionDescriptor &q);
ChartAnswers AnswersFromJson(const nlohmann::json &json);

// JSON text of the built-in chart (docs and --chart templates).
std::string_view DefaultChartJson();

}  // namespace labov

#endif  // LABOV_WIZARD_H_
