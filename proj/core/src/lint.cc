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
#include <map>

#include "labov/errors.h"
#include "labov/text.h"

namespace labov {
namespace {

constexpr std::string_view kSegmentationRef = "clause segmentation";
constexpr std::string_view kFormalNounRef = "clause segmentation: formal nouns";
constexpr std::string_view kQuoteRef = "clause segmentation: quoted speech";
constexpr std::string_view kSpanRef = "narrative spans";
constexpr std::string_view kMicroRef = "micro labels";
constexpr std::string_view kMacroRef = "macro labels";
constexpr std::string_view kUnitRef = "transcript units";

constexpr RuleInfo kRules[] = {
    {"clause-id-sequence", Severity::kError, kUnitRef,
     "clause ids run 1..n in order", true},
    {"clause-text-empty", Severity::kError, kUnitRef,
     "every clause has text", true},
    {"interviewer-unit", Severity::kError, kUnitRef,
     "interviewer units carry no labels and lie in no span", true},
    {"span-boundary-mismatch", Severity::kError, kSpanRef,
     "S precedes E and both mark clauses of the fragment", true},
    {"span-min-length", Severity::kError, kSpanRef,
     "a narrative span covers at least two clauses", true},
    {"span-same-kind-overlap", Severity::kError, kSpanRef,
     "spans of one narrative type do not overlap", true},
    {"label-outside-span", Severity::kError, kSpanRef,
     "labeled clauses lie inside a narrative span", true},
    {"hypothetical-no-micro", Severity::kError, kMicroRef,
     "clauses of hypothetical narratives get no micro label", true},
    {"hypothetical-no-macro", Severity::kError, kMacroRef,
     "clauses of hypothetical narratives get no macro label", true},
    {"span-cross-kind-overlap", Severity::kWarning, kSpanRef,
     "spans of different narrative types overlap", true},
    {"formal-noun-topic-split", Severity::kWarning, kFormalNounRef,
     "formal noun + topic particle without a following boundary", true},
    {"formal-noun-subject-merge", Severity::kWarning, kFormalNounRef,
     "formal noun + subject/modifier particle followed by a boundary", true},
    {"unmarked-quote-merge", Severity::kWarning, kQuoteRef,
     "boundary inside a quotation that has no quotative marker", true},
    {"abstract-position", Severity::kInfo, kMacroRef,
     "Abstract outside the first quarter of its span", true},
    {"coda-position", Severity::kInfo, kMacroRef,
     "Coda outside the last quarter of its span", true},
    {"complication-micro-mismatch", Severity::kInfo, kMacroRef,
     "Complication clause whose micro label is not Narrative", true},
    {"resolution-micro-mismatch", Severity::kInfo, kMacroRef,
     "Resolution clause whose micro label is not Narrative", true},
    {"span-no-complication", Severity::kInfo, kMacroRef,
     "Story or Habitual span without a Complication", true},
    {"possible-onset", Severity::kInfo, kSpanRef,
     "onset discourse marker outside every span", true},
    // Needs reference-time / narration-time analysis; not implemented.
    {"coda-reference-time", Severity::kInfo, kMacroRef,
     "Coda detection from reference time (reserved)", false},
};

LintFinding Make(std::string_view rule, std::string_view fragment_id,
                 int clause, int boundary, std::string message) {
  const RuleInfo *info = FindRule(rule);
  LintFinding f;
  f.rule_id = std::string(rule);
  f.severity = info->severity;
  f.location = {std::string(fragment_id), clause, boundary};
  f.message = std::move(message);
  f.guideline_ref = std::string(info->guideline_ref);
  return f;
}

bool SpanInRange(const NarrativeSpan &s, const Fragment &f) {
  return s.start >= 1 && s.start <= s.end &&
         s.end <= static_cast<int>(f.clauses.size());
}

bool IsAsciiLetter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

bool IsAscii(std::u32string_view s) {
  return std::all_of(s.begin(), s.end(), [](char32_t c) { return c < 0x80; });
}

bool IsPause(char32_t c) {
  return c == U' ' || c == U',' || c == 0x3001 /* 、 */ || c == 0xFF0C;
}

// Matches `word` at `at`; ASCII words must not continue into more letters.
bool MatchAt(std::u32string_view text, size_t at, std::u32string_view word) {
  if (word.empty() || text.substr(at, word.size()) != word) return false;
  if (IsAscii(word)) {
    const size_t end = at + word.size();
    if (end < text.size() && IsAsciiLetter(text[end])) return false;
  }
  return true;
}

// Longest word from `words` at `at`, 0 if none.
size_t MatchAny(std::u32string_view text, size_t at,
                const std::vector<std::u32string> &words) {
  size_t best = 0;
  for (const auto &w : words) {
    if (w.size() > best && MatchAt(text, at, w)) best = w.size();
  }
  return best;
}

std::vector<std::u32string> ToLowerAtoms(const std::vector<std::string> &v) {
  std::vector<std::u32string> out;
  for (const auto &s : v) out.push_back(AsciiLower(ToAtoms(NormalizeText(s))));
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.size() > b.size(); });
  return out;
}

struct Quote {
  size_t open;
  size_t close;
};

std::vector<Quote> FindQuotes(std::u32string_view text) {
  static const std::map<char32_t, char32_t> kPairs = {
      {0x300C, 0x300D},  // 「」
      {0x300E, 0x300F},  // 『』
      {0x201C, 0x201D},  // “”
  };
  std::vector<Quote> out;
  std::vector<std::pair<char32_t, size_t>> stack;
  std::optional<size_t> ascii_open;
  for (size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c == U'"') {
      if (ascii_open) {
        out.push_back({*ascii_open, i});
        ascii_open.reset();
      } else {
        ascii_open = i;
      }
    } else if (kPairs.count(c)) {
      stack.push_back({kPairs.at(c), i});
    } else if (!stack.empty() && stack.back().first == c) {
      out.push_back({stack.back().second, i});
      stack.pop_back();
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Quote &a, const Quote &b) { return a.open < b.open; });
  return out;
}

}  // namespace

std::string_view SeverityName(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "";
}

std::span<const RuleInfo> RuleTable() { return kRules; }

const RuleInfo *FindRule(std::string_view id) {
  for (const RuleInfo &r : kRules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

LintConfig LintConfig::Default() {
  LintConfig c;
  c.onset_markers = {"a, sou da", "sono toki wa", "あ、そうだ", "その時は",
                     "そのときは"};
  c.formal_nouns = {"toki", "koro", "baai", "tokoro", "とき", "時",
                    "ころ", "頃", "場合", "ところ"};
  c.topic_particles = {"wa", "は"};
  c.subject_particles = {"ga", "no", "が", "の"};
  c.quotative_markers = {"to", "tte", "と", "って"};
  return c;
}

LintConfig LintConfig::FromJson(const nlohmann::json &json) {
  LintConfig c = Default();
  if (!json.is_object()) throw ParseError("rules file must be a JSON object");
  auto list = [&json](const char *key, std::vector<std::string> *out) {
    if (!json.contains(key)) return;
    const auto &v = json.at(key);
    if (!v.is_array()) throw ParseError(std::string(key) + " must be an array");
    out->clear();
    for (const auto &s : v) {
      if (!s.is_string()) throw ParseError(std::string(key) + " must hold strings");
      out->push_back(s.get<std::string>());
    }
  };
  list("onset_markers", &c.onset_markers);
  list("formal_nouns", &c.formal_nouns);
  list("topic_particles", &c.topic_particles);
  list("subject_particles", &c.subject_particles);
  list("quotative_markers", &c.quotative_markers);
  std::vector<std::string> disabled;
  list("disabled", &disabled);
  for (const auto &id : disabled) {
    if (!FindRule(id)) throw ParseError("unknown rule id '" + id + "'");
    c.disabled.insert(id);
  }
  return c;
}

std::vector<LintFinding> LintStructure(const Fragment &fragment) {
  std::vector<LintFinding> out;
  for (const SchemaViolation &v : CheckFragment(fragment)) {
    out.push_back(Make(v.rule_id, fragment.fragment_id, v.clause, 0, v.message));
  }
  std::vector<NarrativeSpan> spans = fragment.spans;
  std::sort(spans.begin(), spans.end());
  for (size_t i = 0; i < spans.size(); ++i) {
    for (size_t j = i + 1; j < spans.size(); ++j) {
      const NarrativeSpan &a = spans[i];
      const NarrativeSpan &b = spans[j];
      if (a.kind == b.kind || !SpanInRange(a, fragment) ||
          !SpanInRange(b, fragment) || !a.Overlaps(b)) {
        continue;
      }
      out.push_back(Make(
          "span-cross-kind-overlap", fragment.fragment_id,
          std::max(a.start, b.start), 0,
          std::string(NarrativeTypeName(a.kind)) + " span " +
              std::to_string(a.start) + "-" + std::to_string(a.end) + " and " +
              std::string(NarrativeTypeName(b.kind)) + " span " +
              std::to_string(b.start) + "-" + std::to_string(b.end) +
              " overlap"));
    }
  }
  return out;
}

std::vector<LintFinding> LintSegmentationCues(std::string_view raw_text,
                                              const Segmentation &segmentation,
                                              std::span<const AtomRange> skip,
                                              const LintConfig &config,
                                              std::string_view fragment_id) {
  const std::u32string text = AsciiLower(ToAtoms(NormalizeText(raw_text)));
  if (segmentation.atoms() != static_cast<int>(text.size())) {
    throw ValidationError("segmentation does not cover the text");
  }
  const std::vector<int> boundaries = segmentation.Boundaries();
  const std::vector<int> masses = segmentation.masses();

  auto skipped = [&skip](size_t from, size_t to) {
    return std::any_of(skip.begin(), skip.end(), [&](const AtomRange &r) {
      return static_cast<int>(from) < r.start + r.length &&
             r.start < static_cast<int>(to);
    });
  };
  // Clause holding the atom just before boundary position p.
  auto clause_of = [&masses](int p) {
    int end = 0;
    for (size_t i = 0; i < masses.size(); ++i) {
      end += masses[i];
      if (p - 1 < end) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(masses.size());
  };
  auto boundaries_in = [&boundaries](int lo, int hi) {
    std::vector<int> out;
    for (auto it = std::lower_bound(boundaries.begin(), boundaries.end(), lo);
         it != boundaries.end() && *it <= hi; ++it) {
      out.push_back(*it);
    }
    return out;
  };

  const auto nouns = ToLowerAtoms(config.formal_nouns);
  const auto topic = ToLowerAtoms(config.topic_particles);
  const auto subject = ToLowerAtoms(config.subject_particles);
  const auto quotative = ToLowerAtoms(config.quotative_markers);

  std::vector<LintFinding> out;
  for (size_t i = 0; i < text.size();) {
    const bool word_start = i == 0 || !IsAsciiLetter(text[i - 1]);
    size_t noun = 0;
    for (const auto &w : nouns) {
      if (w.size() > noun && (!IsAscii(w) || word_start) &&
          MatchAt(text, i, w)) {
        noun = w.size();
      }
    }
    if (noun == 0) {
      ++i;
      continue;
    }
    size_t k = i + noun;
    while (k < text.size() && text[k] == U' ') ++k;
    const size_t topic_len = MatchAny(text, k, topic);
    const size_t subject_len = topic_len ? 0 : MatchAny(text, k, subject);
    const size_t particle = topic_len ? topic_len : subject_len;
    if (particle == 0 || skipped(i, k + particle)) {
      i += noun;
      continue;
    }
    const size_t phrase_end = k + particle;
    size_t window_end = phrase_end;
    while (window_end < text.size() && IsPause(text[window_end])) ++window_end;
    const std::string phrase =
        FromAtoms(std::u32string_view(text).substr(i, phrase_end - i));
    const auto found = boundaries_in(static_cast<int>(phrase_end),
                                     static_cast<int>(window_end));
    if (topic_len && found.empty() && window_end < text.size()) {
      const int p = static_cast<int>(window_end);
      out.push_back(Make("formal-noun-topic-split", fragment_id, clause_of(p),
                         p,
                         "'" + phrase +
                             "' marks a formal-noun clause used as discourse "
                             "topic; segment it separately"));
    }
    if (subject_len) {
      for (int p : found) {
        out.push_back(Make("formal-noun-subject-merge", fragment_id,
                           clause_of(p), p,
                           "'" + phrase +
                               "' is a formal-noun clause in subject or "
                               "modifier role; it is not segmented"));
      }
    }
    i = phrase_end;
  }

  for (const Quote &q : FindQuotes(text)) {
    if (skipped(q.open, q.close + 1)) continue;
    size_t k = q.close + 1;
    while (k < text.size() && text[k] == U' ') ++k;
    if (MatchAny(text, k, quotative) > 0) continue;
    for (int p : boundaries_in(static_cast<int>(q.open) + 1,
                               static_cast<int>(q.close))) {
      out.push_back(Make("unmarked-quote-merge", fragment_id, clause_of(p), p,
                         "boundary inside a quotation without a quotative "
                         "marker; quoted speech is not a separate clause"));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LintFinding &a, const LintFinding &b) {
                     return a.location.boundary < b.location.boundary;
                   });
  return out;
}

std::vector<LintFinding> LintFragmentCues(const Fragment &fragment,
                                          const LintConfig &config) {
  for (const Clause &c : fragment.clauses) {
    if (NormalizeText(c.text).empty()) return {};
  }
  const Bundle view = BundleFromFragment(fragment);
  auto findings = LintSegmentationCues(view.raw_text, *view.reference,
                                       view.meta.interviewer_turns, config,
                                       fragment.fragment_id);
  // Report fragment clause ids rather than segment ordinals.
  for (LintFinding &f : findings) {
    if (f.location.clause >= 1 &&
        f.location.clause <= static_cast<int>(fragment.clauses.size())) {
      f.location.clause = fragment.clauses[f.location.clause - 1].id;
    }
  }
  return findings;
}

std::vector<LintFinding> LintMacroShape(const Fragment &fragment) {
  std::vector<LintFinding> out;
  std::vector<NarrativeSpan> spans;
  for (const NarrativeSpan &s : fragment.spans) {
    if (s.kind != NarrativeType::kHypothetical && SpanInRange(s, fragment)) {
      spans.push_back(s);
    }
  }
  std::sort(spans.begin(), spans.end());

  for (size_t i = 0; i < fragment.clauses.size(); ++i) {
    const Clause &c = fragment.clauses[i];
    const int id = static_cast<int>(i) + 1;
    if (!c.macro) continue;
    bool contained = false;
    bool abstract_ok = false;
    bool coda_ok = false;
    for (const NarrativeSpan &s : spans) {
      if (!s.Contains(id)) continue;
      contained = true;
      const int from_start = id - s.start;
      const int to_end = s.end - id;
      abstract_ok |= 4 * from_start < s.length();
      coda_ok |= 4 * to_end < s.length();
    }
    if (contained && *c.macro == MacroLabel::kAbstract && !abstract_ok) {
      out.push_back(Make("abstract-position", fragment.fragment_id, c.id, 0,
                         "Abstract usually previews the story from its first "
                         "quarter"));
    }
    if (contained && *c.macro == MacroLabel::kCoda && !coda_ok) {
      out.push_back(Make("coda-position", fragment.fragment_id, c.id, 0,
                         "Coda usually closes the narrative in its last "
                         "quarter"));
    }
    const bool not_narrative = c.micro && *c.micro != MicroLabel::kNarrative;
    if (*c.macro == MacroLabel::kComplication && not_narrative) {
      out.push_back(Make("complication-micro-mismatch", fragment.fragment_id,
                         c.id, 0,
                         "Complication clause has micro label " +
                             std::string(MicroToken(*c.micro)) +
                             "; Complications usually report events (N)"));
    }
    if (*c.macro == MacroLabel::kResolution && not_narrative) {
      out.push_back(Make("resolution-micro-mismatch", fragment.fragment_id,
                         c.id, 0,
                         "Resolution clause has micro label " +
                             std::string(MicroToken(*c.micro)) +
                             "; Resolutions usually report events (N)"));
    }
  }

  for (const NarrativeSpan &s : spans) {
    bool has_complication = false;
    for (const Clause &c : ClausesInSpan(fragment, s)) {
      has_complication |= c.macro == MacroLabel::kComplication;
    }
    if (!has_complication) {
      out.push_back(Make("span-no-complication", fragment.fragment_id, s.start,
                         0,
                         std::string(NarrativeTypeName(s.kind)) + " span " +
                             std::to_string(s.start) + "-" +
                             std::to_string(s.end) + " has no Complication"));
    }
  }
  return out;
}

std::vector<LintFinding> HintSpanOnsets(const Fragment &fragment,
                                        const LintConfig &config) {
  std::vector<LintFinding> out;
  if (config.onset_markers.empty()) return out;
  const auto markers = ToLowerAtoms(config.onset_markers);
  for (size_t i = 0; i < fragment.clauses.size(); ++i) {
    const Clause &c = fragment.clauses[i];
    const int id = static_cast<int>(i) + 1;
    if (c.speaker != Speaker::kInterviewee) continue;
    const bool in_span = std::any_of(
        fragment.spans.begin(), fragment.spans.end(),
        [&](const NarrativeSpan &s) {
          return SpanInRange(s, fragment) && s.Contains(id);
        });
    if (in_span) continue;
    const std::u32string text = AsciiLower(ToAtoms(NormalizeText(c.text)));
    for (const auto &m : markers) {
      if (m.empty() || text.find(m) == std::u32string::npos) continue;
      out.push_back(Make("possible-onset", fragment.fragment_id, c.id, 0,
                         "'" + FromAtoms(m) +
                             "' often opens a narrative; consider marking S "
                             "here"));
      break;
    }
  }
  return out;
}

std::vector<LintFinding> LintFragment(const Fragment &fragment,
                                      const LintConfig &config) {
  std::vector<LintFinding> all = LintStructure(fragment);
  for (auto part : {LintFragmentCues(fragment, config), LintMacroShape(fragment),
                    HintSpanOnsets(fragment, config)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  std::erase_if(all, [&config](const LintFinding &f) {
    return config.disabled.count(f.rule_id) > 0;
  });
  return all;
}

bool HasErrors(std::span<const LintFinding> findings) {
  return std::any_of(findings.begin(), findings.end(), [](const LintFinding &f) {
    return f.severity == Severity::kError;
  });
}

nlohmann::ordered_json FindingToJson(const LintFinding &finding) {
  nlohmann::ordered_json j;
  j["rule_id"] = finding.rule_id;
  j["severity"] = SeverityName(finding.severity);
  nlohmann::ordered_json loc;
  loc["fragment_id"] = finding.location.fragment_id;
  if (finding.location.clause > 0) loc["clause"] = finding.location.clause;
  if (finding.location.boundary > 0) loc["boundary"] = finding.location.boundary;
  j["location"] = std::move(loc);
  j["message"] = finding.message;
  j["guideline_ref"] = finding.guideline_ref;
  return j;
}

}  // namespace labov
