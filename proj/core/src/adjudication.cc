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

#include "labov/errors.h"

namespace labov {
namespace {

std::optional<std::string> CanonicalLabel(VoteField field,
                                          std::string_view token) {
  switch (field) {
    case VoteField::kMicro:
      if (auto m = ParseMicro(token)) return std::string(MicroToken(*m));
      break;
    case VoteField::kMacro:
      if (auto m = ParseMacro(token)) return std::string(MacroToken(*m));
      break;
    case VoteField::kSpanMembership:
      if (token == kInSpan || token == kOutOfSpan) return std::string(token);
      break;
  }
  return std::nullopt;
}

// The segmentation every layer labels; throws if they disagree.
const Segmentation &SharedSegmentation(const Bundle &bundle) {
  if (bundle.layers.size() < 2) {
    throw ValidationError("majority vote needs at least two layers, bundle '" +
                          bundle.meta.fragment_id + "' has " +
                          std::to_string(bundle.layers.size()));
  }
  const Segmentation &first = LabelSegmentation(bundle, bundle.layers.front());
  for (const AnnotatorLayer &layer : bundle.layers) {
    if (!(LabelSegmentation(bundle, layer) == first)) {
      throw ValidationError("layer of annotator '" + layer.annotator_id +
                            "' is not aligned to the shared clause "
                            "segmentation");
    }
  }
  return first;
}

bool SameTarget(const VoteOutcome &o, const LabelUnit &unit, VoteField field,
                std::optional<NarrativeType> kind) {
  return o.unit == unit && o.field == field &&
         (field != VoteField::kSpanMembership || o.span_kind == kind);
}

}  // namespace

std::string_view VoteFieldName(VoteField field) {
  switch (field) {
    case VoteField::kMicro: return "micro";
    case VoteField::kMacro: return "macro";
    case VoteField::kSpanMembership: return "span_membership";
  }
  return "";
}

std::optional<VoteField> ParseVoteField(std::string_view name) {
  for (VoteField f :
       {VoteField::kMicro, VoteField::kMacro, VoteField::kSpanMembership}) {
    if (name == VoteFieldName(f)) return f;
  }
  if (name == "spans") return VoteField::kSpanMembership;
  return std::nullopt;
}

std::optional<VoteOutcome> TallyVotes(
    LabelUnit unit, VoteField field,
    std::span<const std::optional<std::string>> votes) {
  VoteOutcome out;
  out.unit = std::move(unit);
  out.field = field;
  bool missing = false;
  for (const auto &v : votes) {
    if (v) {
      out.votes.push_back(*v);
    } else {
      missing = true;
    }
  }
  if (out.votes.empty()) return std::nullopt;
  std::sort(out.votes.begin(), out.votes.end());

  std::map<std::string, int> counts;
  for (const auto &v : out.votes) ++counts[v];
  int best = 0;
  int tied = 0;
  std::string winner;
  for (const auto &[label, n] : counts) {
    if (n > best) {
      best = n;
      tied = 1;
      winner = label;
    } else if (n == best) {
      ++tied;
    }
  }
  if (tied == 1) {
    out.decided = winner;
    out.unanimous = !missing && counts.size() == 1;
    out.basis = out.unanimous ? "unanimous" : "majority";
  } else {
    out.needs_discussion = true;
    out.basis = best == 1 ? "no-agreement" : "tie";
  }
  return out;
}

std::vector<VoteOutcome> MajorityVote(const Bundle &bundle, VoteField field) {
  const Segmentation &shared = SharedSegmentation(bundle);
  const int clauses = shared.segment_count();
  std::vector<VoteOutcome> out;

  if (field != VoteField::kSpanMembership) {
    for (int id = 1; id <= clauses; ++id) {
      std::vector<std::optional<std::string>> votes;
      for (const AnnotatorLayer &layer : bundle.layers) {
        std::optional<std::string> v;
        if (field == VoteField::kMicro) {
          if (auto it = layer.micro.find(id); it != layer.micro.end()) {
            v = std::string(MicroToken(it->second));
          }
        } else if (auto it = layer.macro.find(id); it != layer.macro.end()) {
          v = std::string(MacroToken(it->second));
        }
        votes.push_back(std::move(v));
      }
      if (auto o = TallyVotes({bundle.meta.fragment_id, id}, field, votes)) {
        out.push_back(std::move(*o));
      }
    }
    return out;
  }

  const int layers = static_cast<int>(bundle.layers.size());
  for (NarrativeType kind : kAllNarrativeTypes) {
    std::vector<VoteOutcome> kind_outcomes;
    for (int id = 1; id <= clauses; ++id) {
      VoteOutcome o;
      o.unit = {bundle.meta.fragment_id, id};
      o.field = field;
      o.span_kind = kind;
      int in = 0;
      for (const AnnotatorLayer &layer : bundle.layers) {
        const bool inside = std::any_of(
            layer.spans.begin(), layer.spans.end(),
            [&](const NarrativeSpan &s) { return s.kind == kind && s.Contains(id); });
        in += inside;
        o.votes.emplace_back(inside ? kInSpan : kOutOfSpan);
      }
      if (in == 0) continue;
      std::sort(o.votes.begin(), o.votes.end());
      o.decided = std::string(2 * in > layers ? kInSpan : kOutOfSpan);
      o.unanimous = in == layers;
      o.basis = o.unanimous ? "unanimous" : "majority";
      kind_outcomes.push_back(std::move(o));
    }
    // A lone in-span clause cannot form a span on its own.
    for (size_t i = 0; i < kind_outcomes.size(); ++i) {
      VoteOutcome &o = kind_outcomes[i];
      if (o.decided != kInSpan) continue;
      auto in_at = [&](int clause) {
        return std::any_of(kind_outcomes.begin(), kind_outcomes.end(),
                           [&](const VoteOutcome &x) {
                             return x.unit.clause == clause &&
                                    x.decided == kInSpan;
                           });
      };
      if (!in_at(o.unit.clause - 1) && !in_at(o.unit.clause + 1)) {
        o.decided.reset();
        o.needs_discussion = true;
        o.unanimous = false;
        o.basis = "short-run";
      }
    }
    out.insert(out.end(), kind_outcomes.begin(), kind_outcomes.end());
  }
  return out;
}

std::vector<VoteOutcome> Adjudicate(const Bundle &bundle) {
  std::vector<VoteOutcome> out =
      MajorityVote(bundle, VoteField::kSpanMembership);
  for (VoteField f : {VoteField::kMicro, VoteField::kMacro}) {
    auto part = MajorityVote(bundle, f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

VoteOutcome ResolveDiscussion(const VoteOutcome &outcome,
                              std::string_view resolution,
                              std::vector<std::string> resolvers,
                              std::string note, std::string when) {
  if (!outcome.needs_discussion) {
    throw ValidationError("clause " + std::to_string(outcome.unit.clause) +
                          " (" + std::string(VoteFieldName(outcome.field)) +
                          ") is already decided");
  }
  const auto label = CanonicalLabel(outcome.field, resolution);
  if (!label) {
    throw ValidationError("'" + std::string(resolution) +
                          "' is not a valid " +
                          std::string(VoteFieldName(outcome.field)) + " label");
  }
  if (resolvers.empty()) {
    throw ValidationError("a discussion resolution needs at least one resolver");
  }
  VoteOutcome out = outcome;
  out.decided = *label;
  out.needs_discussion = false;
  out.basis = "discussion";
  out.audit = AuditRecord{std::move(resolvers), std::move(when), std::move(note)};
  return out;
}

void ApplyResolutions(std::vector<VoteOutcome> &outcomes,
                      std::span<const Resolution> resolutions) {
  for (const Resolution &r : resolutions) {
    auto it = std::find_if(outcomes.begin(), outcomes.end(),
                           [&](const VoteOutcome &o) {
                             return SameTarget(o, r.unit, r.field, r.span_kind);
                           });
    if (it == outcomes.end()) {
      throw ValidationError("resolution for clause " +
                            std::to_string(r.unit.clause) + " of '" +
                            r.unit.fragment_id + "' (" +
                            std::string(VoteFieldName(r.field)) +
                            ") matches no vote");
    }
    *it = ResolveDiscussion(*it, r.label, r.resolvers, r.note, r.when);
  }
}

std::vector<Resolution> ResolutionsFromJson(const nlohmann::json &json) {
  const nlohmann::json &list =
      json.is_object() && json.contains("resolutions") ? json.at("resolutions")
                                                        : json;
  if (!list.is_array()) throw ParseError("resolutions must be an array");
  std::vector<Resolution> out;
  try {
    for (const auto &j : list) {
      Resolution r;
      r.unit.fragment_id = j.at("fragment_id").get<std::string>();
      r.unit.clause = j.at("clause").get<int>();
      const auto field = ParseVoteField(j.at("field").get<std::string>());
      if (!field) throw ParseError("unknown field in resolution");
      r.field = *field;
      if (j.contains("span_kind")) {
        r.span_kind = ParseNarrativeType(j.at("span_kind").get<std::string>());
        if (!r.span_kind) throw ParseError("unknown span kind in resolution");
      }
      r.label = j.at("label").get<std::string>();
      r.resolvers = j.at("resolvers").get<std::vector<std::string>>();
      r.note = j.value("note", "");
      r.when = j.value("when", "");
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("bad resolution: ") + e.what());
  }
  return out;
}

Fragment BuildGold(const Bundle &bundle,
                   std::span<const VoteOutcome> outcomes) {
  std::string pending;
  for (const VoteOutcome &o : outcomes) {
    if (o.needs_discussion) {
      pending += " " + std::to_string(o.unit.clause) + ":" +
                 std::string(VoteFieldName(o.field));
    }
  }
  if (!pending.empty()) {
    throw ValidationError("outcomes still need discussion:" + pending);
  }
  const Segmentation &shared = SharedSegmentation(bundle);
  Fragment gold;
  gold.fragment_id = bundle.meta.fragment_id;
  gold.topic = bundle.meta.topic;
  gold.clauses = SegmentClauses(bundle, shared);
  const int n = static_cast<int>(gold.clauses.size());

  std::map<NarrativeType, std::vector<bool>> inside;
  for (NarrativeType t : kAllNarrativeTypes) inside[t].assign(n + 2, false);

  for (const VoteOutcome &o : outcomes) {
    if (o.unit.fragment_id != gold.fragment_id) continue;
    const int id = o.unit.clause;
    if (id < 1 || id > n || !o.decided) continue;
    Clause &c = gold.clauses[id - 1];
    switch (o.field) {
      case VoteField::kMicro:
        c.micro = ParseMicro(*o.decided);
        break;
      case VoteField::kMacro:
        c.macro = ParseMacro(*o.decided);
        break;
      case VoteField::kSpanMembership:
        if (o.span_kind && *o.decided == kInSpan) inside[*o.span_kind][id] = true;
        break;
    }
  }
  for (NarrativeType t : kAllNarrativeTypes) {
    const auto &flags = inside[t];
    for (int id = 1; id <= n; ++id) {
      if (!flags[id] || flags[id - 1]) continue;
      int end = id;
      while (end + 1 <= n && flags[end + 1]) ++end;
      gold.spans.push_back({t, id, end});
    }
  }
  gold.SortSpans();
  return gold;
}

nlohmann::ordered_json OutcomeToJson(const VoteOutcome &o) {
  nlohmann::ordered_json j;
  j["fragment_id"] = o.unit.fragment_id;
  j["clause"] = o.unit.clause;
  j["field"] = VoteFieldName(o.field);
  if (o.span_kind) j["span_kind"] = NarrativeTypeName(*o.span_kind);
  j["votes"] = o.votes;
  j["decided"] = o.decided ? nlohmann::ordered_json(*o.decided)
                           : nlohmann::ordered_json(nullptr);
  j["needs_discussion"] = o.needs_discussion;
  j["unanimous"] = o.unanimous;
  j["basis"] = o.basis;
  if (o.audit) {
    nlohmann::ordered_json a;
    a["resolvers"] = o.audit->resolvers;
    a["when"] = o.audit->when;
    a["note"] = o.audit->note;
    j["audit"] = std::move(a);
  }
  return j;
}

VoteOutcome OutcomeFromJson(const nlohmann::json &j) {
  VoteOutcome o;
  try {
    o.unit.fragment_id = j.at("fragment_id").get<std::string>();
    o.unit.clause = j.at("clause").get<int>();
    const auto field = ParseVoteField(j.at("field").get<std::string>());
    if (!field) throw ParseError("unknown vote field");
    o.field = *field;
    if (j.contains("span_kind")) {
      o.span_kind = ParseNarrativeType(j.at("span_kind").get<std::string>());
      if (!o.span_kind) throw ParseError("unknown span kind");
    }
    o.votes = j.value("votes", std::vector<std::string>{});
    if (j.contains("decided") && !j.at("decided").is_null()) {
      o.decided = j.at("decided").get<std::string>();
    }
    o.needs_discussion = j.at("needs_discussion").get<bool>();
    o.unanimous = j.value("unanimous", false);
    o.basis = j.value("basis", "");
    if (j.contains("audit")) {
      const auto &a = j.at("audit");
      o.audit = AuditRecord{a.at("resolvers").get<std::vector<std::string>>(),
                            a.value("when", ""), a.value("note", "")};
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("bad vote outcome: ") + e.what());
  }
  if (o.decided.has_value() == o.needs_discussion) {
    throw ParseError("vote outcome must be either decided or pending");
  }
  return o;
}

int RoundPercent(const Rational &share, PercentRounding rounding) {
  const std::int64_t num = share.numerator();
  const std::int64_t den = share.denominator();
  if (rounding == PercentRounding::kFloor) return static_cast<int>(100 * num / den);
  return static_cast<int>((200 * num + den) / (2 * den));
}

GoldCorpusStats CorpusStats(std::span<const Fragment> gold,
                            PercentRounding rounding) {
  GoldCorpusStats stats;
  stats.rounding = rounding;
  stats.fragments = static_cast<int>(gold.size());
  for (MacroLabel m : kAllMacroLabels) stats.macro_counts[m] = 0;
  for (MicroLabel m : kAllMicroLabels) stats.micro[m] = {};
  for (const Fragment &f : gold) {
    for (const Clause &c : f.clauses) {
      ++stats.total_clauses;
      if (c.speaker == Speaker::kInterviewer) {
        ++stats.interviewer_clauses;
      } else {
        ++stats.interviewee_clauses;
      }
      if (c.macro) ++stats.macro_counts[*c.macro];
      if (c.micro) {
        ++stats.micro[*c.micro].count;
        ++stats.micro_labeled;
      }
    }
  }
  for (auto &[label, share] : stats.micro) {
    if (stats.micro_labeled == 0) continue;
    share.share = Rational(share.count, stats.micro_labeled);
    share.percent = RoundPercent(share.share, rounding);
  }
  stats.spans = SpanLengths(gold);
  return stats;
}

}  // namespace labov
