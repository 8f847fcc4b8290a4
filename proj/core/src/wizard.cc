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

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "labov/errors.h"

namespace labov {
namespace {

constexpr std::string_view kDefaultChart = R"json({
  "start": "hypothetical",
  "nodes": [
    {
      "id": "hypothetical",
      "question_en": "Is the clause part of a hypothetical narrative only (imagined or counterfactual events), with no Story or Habitual span around it?",
      "question_ja": "この節は仮定的ナラティブ（想像上・反事実的な出来事）にのみ属し、ストーリーや習慣的ナラティブの範囲には含まれていませんか？",
      "examples": [
        "If she had stayed at home, she would have fallen again.",
        "I would have just quit my job then."
      ],
      "yes": {"outcome": "none"},
      "no": {"node": "event"}
    },
    {
      "id": "event",
      "question_en": "Does the clause report a specific event or action, or a state that the narrator comes upon at this point of the narrative (even if it existed before)? In a habitual narrative, one step of the repeated cycle counts as an event.",
      "question_ja": "この節は特定の出来事・行為、または語りのこの時点で語り手が気づいた（以前から続いていた）状態を報告していますか？習慣的ナラティブでは、繰り返しの一回分の一段階を出来事とみなします。",
      "examples": [
        "Then my mother called me from the hospital.",
        "When I opened the fridge, it was already empty.",
        "Every morning I would drive her to day care."
      ],
      "yes": {"outcome": "N"},
      "no": {"node": "entire_period"}
    },
    {
      "id": "entire_period",
      "question_en": "Does the information hold for the entire period the narrative is about (rather than only part of it)?",
      "question_ja": "この節の情報は、ナラティブが扱う期間全体を通して成り立ちますか（一部の期間だけではなく）？",
      "examples": [
        "My father was a carpenter.",
        "(no) At that point I was still working full time."
      ],
      "yes": {"outcome": "F"},
      "no": {"outcome": "R"}
    }
  ]
})json";

ChartEdge EdgeFromJson(const nlohmann::json &j, const std::string &where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  ChartEdge e;
  if (j.contains("node")) {
    if (!j.at("node").is_string()) throw ParseError(where + ".node must be a string");
    e.node = j.at("node").get<std::string>();
    return e;
  }
  if (!j.contains("outcome") || !j.at("outcome").is_string()) {
    throw ParseError(where + " needs \"node\" or \"outcome\"");
  }
  const std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "none") {
    e.no_label = true;
  } else {
    e.label = ParseMicro(outcome);
    if (!e.label) throw ParseError(where + ": unknown outcome '" + outcome + "'");
  }
  return e;
}

ChartOutcome OutcomeOf(const ChartEdge &e) { return ChartOutcome{e.label}; }

}  // namespace

const ChartNode *MicroChart::Find(std::string_view id) const {
  for (const ChartNode &n : nodes_) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

MicroChart MicroChart::FromJson(const nlohmann::json &json) {
  MicroChart chart;
  if (!json.is_object() || !json.contains("start") || !json.contains("nodes") ||
      !json.at("start").is_string() || !json.at("nodes").is_array()) {
    throw ParseError("chart needs \"start\" and a \"nodes\" array");
  }
  chart.start_ = json.at("start").get<std::string>();
  for (const auto &nj : json.at("nodes")) {
    ChartNode node;
    if (!nj.is_object() || !nj.contains("id") || !nj.at("id").is_string()) {
      throw ParseError("chart node needs a string id");
    }
    node.id = nj.at("id").get<std::string>();
    node.question_en = nj.value("question_en", "");
    node.question_ja = nj.value("question_ja", "");
    if (nj.contains("examples")) {
      for (const auto &e : nj.at("examples")) {
        if (!e.is_string()) throw ParseError("examples must be strings");
        node.examples.push_back(e.get<std::string>());
      }
    }
    if (!nj.contains("yes") || !nj.contains("no")) {
      throw ParseError("node '" + node.id + "' needs yes and no branches");
    }
    node.yes = EdgeFromJson(nj.at("yes"), node.id + ".yes");
    node.no = EdgeFromJson(nj.at("no"), node.id + ".no");
    if (chart.Find(node.id)) throw ParseError("duplicate node '" + node.id + "'");
    chart.nodes_.push_back(std::move(node));
  }
  if (!chart.Find(chart.start_)) {
    throw ParseError("start node '" + chart.start_ + "' does not exist");
  }
  // Every edge must resolve and no path may revisit a node.
  std::function<void(const std::string &, std::set<std::string> &)> walk =
      [&](const std::string &id, std::set<std::string> &on_path) {
        const ChartNode *n = chart.Find(id);
        if (!n) throw ParseError("edge to unknown node '" + id + "'");
        if (!on_path.insert(id).second) {
          throw ParseError("chart has a cycle through '" + id + "'");
        }
        for (const ChartEdge *e : {&n->yes, &n->no}) {
          if (!e->node.empty()) walk(e->node, on_path);
        }
        on_path.erase(id);
      };
  std::set<std::string> on_path;
  walk(chart.start_, on_path);
  return chart;
}

MicroChart MicroChart::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chart " + path);
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("chart is not valid JSON: ") + e.what());
  }
}

const MicroChart &MicroChart::Default() {
  static const MicroChart chart =
      FromJson(nlohmann::json::parse(kDefaultChart));
  return chart;
}

std::optional<ChartOutcome> MicroChart::Decide(
    const ChartAnswers &answers) const {
  const QuestionDescriptor q = Next(answers);
  if (!q.terminal) return std::nullopt;
  return q.outcome;
}

QuestionDescriptor MicroChart::Next(const ChartAnswers &answers) const {
  const ChartNode *node = Find(start_);
  int step = 1;
  while (true) {
    auto it = answers.find(node->id);
    if (it == answers.end()) {
      QuestionDescriptor q;
      q.node_id = node->id;
      q.question_en = node->question_en;
      q.question_ja = node->question_ja;
      q.examples = node->examples;
      q.step = step;
      return q;
    }
    const ChartEdge &edge = it->second ? node->yes : node->no;
    if (edge.node.empty()) {
      QuestionDescriptor q;
      q.terminal = true;
      q.step = step;
      q.outcome = OutcomeOf(edge);
      return q;
    }
    node = Find(edge.node);
    ++step;
  }
}

std::vector<std::pair<ChartAnswers, ChartOutcome>> MicroChart::Paths() const {
  std::vector<std::pair<ChartAnswers, ChartOutcome>> out;
  std::function<void(const ChartNode &, ChartAnswers &)> walk =
      [&](const ChartNode &n, ChartAnswers &answers) {
        for (bool answer : {true, false}) {
          answers[n.id] = answer;
          const ChartEdge &e = answer ? n.yes : n.no;
          if (e.node.empty()) {
            out.emplace_back(answers, OutcomeOf(e));
          } else {
            walk(*Find(e.node), answers);
          }
          answers.erase(n.id);
        }
      };
  ChartAnswers answers;
  walk(*Find(start_), answers);
  return out;
}

int MicroChart::MaxDepth() const {
  size_t depth = 0;
  for (const auto &[answers, outcome] : Paths()) {
    depth = std::max(depth, answers.size());
  }
  return static_cast<int>(depth);
}

ChartAnswers ChartAnswer::ToAnswers() const {
  ChartAnswers out;
  if (in_hypothetical_only) {
    out[std::string(kQuestionHypothetical)] = *in_hypothetical_only;
  }
  if (reports_event_or_discovery) {
    out[std::string(kQuestionEvent)] = *reports_event_or_discovery;
  }
  if (holds_entire_period) {
    out[std::string(kQuestionEntirePeriod)] = *holds_entire_period;
  }
  return out;
}

std::optional<MicroLabel> DecideMicro(const ChartAnswer &answers,
                                      const MicroChart &chart) {
  const QuestionDescriptor q = chart.Next(answers.ToAnswers());
  if (!q.terminal) {
    throw ValidationError("question '" + q.node_id + "' is unanswered");
  }
  return q.outcome.label;
}

QuestionDescriptor NextQuestion(const ChartAnswers &answers,
                                const MicroChart &chart) {
  return chart.Next(answers);
}

nlohmann::ordered_json QuestionToJson(const QuestionDescriptor &q) {
  nlohmann::ordered_json j;
  j["terminal"] = q.terminal;
  j["step"] = q.step;
  if (q.terminal) {
    if (q.outcome.label) {
      j["label"] = MicroToken(*q.outcome.label);
    } else {
      j["label"] = nullptr;
    }
  } else {
    j["node_id"] = q.node_id;
    j["question_en"] = q.question_en;
    j["question_ja"] = q.question_ja;
    j["examples"] = q.examples;
  }
  return j;
}

ChartAnswers AnswersFromJson(const nlohmann::json &json) {
  if (!json.is_object()) throw ParseError("answers must be a JSON object");
  ChartAnswers out;
  for (const auto &[key, value] : json.items()) {
    if (!value.is_boolean()) {
      throw ParseError("answer '" + key + "' must be true or false");
    }
    out[key] = value.get<bool>();
  }
  return out;
}

std::string_view DefaultChartJson() { return kDefaultChart; }

}  // namespace labov
