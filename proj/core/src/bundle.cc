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

#include "labov/bundle.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "labov/errors.h"
#include "labov/text.h"

namespace labov {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

const json &Require(const json &obj, const char *key, const char *where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string(where) + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

std::string RequireString(const json &obj, const char *key, const char *where) {
  const json &v = Require(obj, key, where);
  if (!v.is_string()) {
    throw ParseError(std::string(where) + ": \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

int RequireInt(const json &v, const char *what) {
  if (!v.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  const auto value = v.get<std::int64_t>();
  if (value < -(1LL << 30) || value > (1LL << 30)) {
    throw ParseError(std::string(what) + " is out of range");
  }
  return static_cast<int>(value);
}

int ParseClauseKey(const std::string &key) {
  try {
    size_t used = 0;
    const int id = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return id;
  } catch (const std::exception &) {
    throw ParseError("label map key '" + key + "' is not a clause id");
  }
}

ordered_json SegmentationToJson(const Segmentation &s) {
  ordered_json j;
  j["atom_basis"] = AtomBasisName(s.basis());
  j["masses"] = s.masses();
  return j;
}

Segmentation SegmentationFromJson(const json &j, const char *where) {
  if (j.contains("atom_basis") &&
      j.at("atom_basis") != std::string(AtomBasisName(AtomBasis::kCharacter))) {
    throw ParseError(std::string(where) + ": unsupported atom basis");
  }
  const json &masses = Require(j, "masses", where);
  if (!masses.is_array()) throw ParseError(std::string(where) + ": masses must be an array");
  std::vector<int> out;
  for (const json &m : masses) out.push_back(RequireInt(m, "segment mass"));
  try {
    return Segmentation(std::move(out));
  } catch (const ValidationError &e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
}

ordered_json SpansToJson(const std::vector<NarrativeSpan> &spans) {
  ordered_json arr = ordered_json::array();
  for (const NarrativeSpan &s : spans) {
    ordered_json j;
    j["kind"] = NarrativeTypeName(s.kind);
    j["start"] = s.start;
    j["end"] = s.end;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<NarrativeSpan> SpansFromJson(const json &arr) {
  if (!arr.is_array()) throw ParseError("spans must be an array");
  std::vector<NarrativeSpan> out;
  for (const json &j : arr) {
    const std::string kind = RequireString(j, "kind", "span");
    const auto parsed = ParseNarrativeType(kind);
    if (!parsed) throw ParseError("unknown narrative type '" + kind + "'");
    out.push_back({*parsed, RequireInt(Require(j, "start", "span"), "span start"),
                   RequireInt(Require(j, "end", "span"), "span end")});
  }
  return out;
}

void CheckClauseId(const AnnotatorLayer &layer, int id, int clause_count) {
  if (id < 1 || id > clause_count) {
    throw ValidationError("annotator '" + layer.annotator_id +
                          "' refers to unknown clause id " + std::to_string(id) +
                          " (segmentation has " + std::to_string(clause_count) +
                          " clauses)");
  }
}

}  // namespace

const AnnotatorLayer *Bundle::FindLayer(std::string_view annotator) const {
  for (const AnnotatorLayer &l : layers) {
    if (l.annotator_id == annotator) return &l;
  }
  return nullptr;
}

AnnotatorLayer *Bundle::FindLayer(std::string_view annotator) {
  for (AnnotatorLayer &l : layers) {
    if (l.annotator_id == annotator) return &l;
  }
  return nullptr;
}

const Segmentation &LabelSegmentation(const Bundle &bundle,
                                      const AnnotatorLayer &layer) {
  if (layer.label_basis == LabelBasis::kReference) {
    if (!bundle.reference) {
      throw ValidationError("annotator '" + layer.annotator_id +
                            "' labels the reference segmentation, but the "
                            "bundle has none");
    }
    return *bundle.reference;
  }
  return layer.clause_boundaries;
}

void CheckLayer(const Bundle &bundle, const AnnotatorLayer &layer) {
  if (layer.fragment_id != bundle.meta.fragment_id) {
    throw ValidationError("annotator '" + layer.annotator_id +
                          "' layer names fragment '" + layer.fragment_id +
                          "', expected '" + bundle.meta.fragment_id + "'");
  }
  if (layer.text_digest != TextDigest(bundle.raw_text)) {
    throw ValidationError("annotator '" + layer.annotator_id +
                          "' layer was made on a different transcript (digest " +
                          layer.text_digest + ")");
  }
  const int atoms = AtomCount(bundle.raw_text);
  if (layer.clause_boundaries.atoms() != atoms) {
    throw ValidationError("annotator '" + layer.annotator_id +
                          "' segmentation covers " +
                          std::to_string(layer.clause_boundaries.atoms()) +
                          " atoms, transcript has " + std::to_string(atoms));
  }
  const int clauses = LabelSegmentation(bundle, layer).segment_count();
  for (const NarrativeSpan &s : layer.spans) {
    CheckClauseId(layer, s.start, clauses);
    CheckClauseId(layer, s.end, clauses);
  }
  for (const auto &[id, label] : layer.micro) CheckClauseId(layer, id, clauses);
  for (const auto &[id, label] : layer.macro) CheckClauseId(layer, id, clauses);
}

void CheckBundle(const Bundle &bundle) {
  const int atoms = AtomCount(bundle.raw_text);
  if (bundle.reference && bundle.reference->atoms() != atoms) {
    throw ValidationError("reference segmentation covers " +
                          std::to_string(bundle.reference->atoms()) +
                          " atoms, transcript has " + std::to_string(atoms));
  }
  for (const AtomRange &r : bundle.meta.interviewer_turns) {
    if (r.start < 0 || r.length < 1 || r.start + r.length > atoms) {
      throw ValidationError("interviewer turn outside the transcript");
    }
  }
  std::set<std::string> seen;
  for (const AnnotatorLayer &layer : bundle.layers) {
    if (!seen.insert(layer.annotator_id).second) {
      throw ValidationError("duplicate layer for annotator '" +
                            layer.annotator_id + "'");
    }
    CheckLayer(bundle, layer);
  }
  if (bundle.gold && bundle.gold->fragment_id != bundle.meta.fragment_id) {
    throw ValidationError("gold fragment id '" + bundle.gold->fragment_id +
                          "' does not match bundle");
  }
}

ordered_json FragmentToJson(const Fragment &fragment) {
  ordered_json j;
  j["fragment_id"] = fragment.fragment_id;
  j["topic"] = TopicName(fragment.topic);
  ordered_json clauses = ordered_json::array();
  for (const Clause &c : fragment.clauses) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["speaker"] = SpeakerToken(c.speaker);
    cj["text"] = c.text;
    if (c.micro) cj["micro"] = MicroToken(*c.micro);
    if (c.macro) cj["macro"] = MacroToken(*c.macro);
    clauses.push_back(std::move(cj));
  }
  j["clauses"] = std::move(clauses);
  j["spans"] = SpansToJson(fragment.spans);
  return j;
}

Fragment FragmentFromJson(const json &j) {
  Fragment f;
  f.fragment_id = RequireString(j, "fragment_id", "fragment");
  if (j.contains("topic")) {
    const std::string topic = RequireString(j, "topic", "fragment");
    const auto parsed = ParseTopic(topic);
    if (!parsed) throw ParseError("unknown topic '" + topic + "'");
    f.topic = *parsed;
  }
  const json &clauses = Require(j, "clauses", "fragment");
  if (!clauses.is_array()) throw ParseError("clauses must be an array");
  for (const json &cj : clauses) {
    Clause c;
    c.id = RequireInt(Require(cj, "id", "clause"), "clause id");
    const std::string speaker = RequireString(cj, "speaker", "clause");
    const auto parsed_speaker = ParseSpeaker(speaker);
    if (!parsed_speaker) throw ParseError("unknown speaker '" + speaker + "'");
    c.speaker = *parsed_speaker;
    c.text = NormalizeText(RequireString(cj, "text", "clause"));
    if (cj.contains("micro") && !cj.at("micro").is_null()) {
      const std::string token = RequireString(cj, "micro", "clause");
      c.micro = ParseMicro(token);
      if (!c.micro) throw ParseError("unknown micro label '" + token + "'");
    }
    if (cj.contains("macro") && !cj.at("macro").is_null()) {
      const std::string token = RequireString(cj, "macro", "clause");
      c.macro = ParseMacro(token);
      if (!c.macro) throw ParseError("unknown macro label '" + token + "'");
    }
    f.clauses.push_back(std::move(c));
  }
  if (j.contains("spans")) f.spans = SpansFromJson(j.at("spans"));
  return f;
}

ordered_json LayerToJson(const AnnotatorLayer &layer) {
  ordered_json j;
  j["annotator_id"] = layer.annotator_id;
  j["fragment_id"] = layer.fragment_id;
  j["text_digest"] = layer.text_digest;
  j["segmentation"] = SegmentationToJson(layer.clause_boundaries);
  j["label_basis"] =
      layer.label_basis == LabelBasis::kReference ? "reference" : "own";
  j["spans"] = SpansToJson(layer.spans);
  ordered_json micro = ordered_json::object();
  for (const auto &[id, label] : layer.micro) {
    micro[std::to_string(id)] = MicroToken(label);
  }
  j["micro"] = std::move(micro);
  ordered_json macro = ordered_json::object();
  for (const auto &[id, label] : layer.macro) {
    macro[std::to_string(id)] = MacroToken(label);
  }
  j["macro"] = std::move(macro);
  return j;
}

AnnotatorLayer LayerFromJson(const json &j) {
  AnnotatorLayer layer;
  layer.annotator_id = RequireString(j, "annotator_id", "layer");
  layer.fragment_id = RequireString(j, "fragment_id", "layer");
  layer.text_digest = RequireString(j, "text_digest", "layer");
  layer.clause_boundaries =
      SegmentationFromJson(Require(j, "segmentation", "layer"), "layer");
  if (j.contains("label_basis")) {
    const std::string basis = RequireString(j, "label_basis", "layer");
    if (basis == "reference") {
      layer.label_basis = LabelBasis::kReference;
    } else if (basis != "own") {
      throw ParseError("unknown label basis '" + basis + "'");
    }
  }
  if (j.contains("spans")) layer.spans = SpansFromJson(j.at("spans"));
  if (j.contains("micro")) {
    const json &m = j.at("micro");
    if (!m.is_object()) throw ParseError("micro must be an object");
    for (const auto &[key, value] : m.items()) {
      if (value.is_null()) continue;
      const std::string token = value.is_string() ? value.get<std::string>() : "";
      const auto label = ParseMicro(token);
      if (!label) throw ParseError("unknown micro label '" + token + "'");
      layer.micro[ParseClauseKey(key)] = *label;
    }
  }
  if (j.contains("macro")) {
    const json &m = j.at("macro");
    if (!m.is_object()) throw ParseError("macro must be an object");
    for (const auto &[key, value] : m.items()) {
      if (value.is_null()) continue;
      const std::string token = value.is_string() ? value.get<std::string>() : "";
      const auto label = ParseMacro(token);
      if (!label) throw ParseError("unknown macro label '" + token + "'");
      layer.macro[ParseClauseKey(key)] = *label;
    }
  }
  return layer;
}

ordered_json BundleToJson(const Bundle &bundle) {
  ordered_json j;
  j["format"] = kBundleFormat;
  ordered_json meta;
  meta["fragment_id"] = bundle.meta.fragment_id;
  meta["topic"] = TopicName(bundle.meta.topic);
  ordered_json turns = ordered_json::array();
  for (const AtomRange &r : bundle.meta.interviewer_turns) {
    turns.push_back({r.start, r.length});
  }
  meta["interviewer_turns"] = std::move(turns);
  j["fragment"] = std::move(meta);
  j["raw_text"] = bundle.raw_text;
  if (bundle.reference) j["reference"] = SegmentationToJson(*bundle.reference);
  ordered_json layers = ordered_json::array();
  for (const AnnotatorLayer &l : bundle.layers) layers.push_back(LayerToJson(l));
  j["layers"] = std::move(layers);
  if (bundle.gold) j["gold"] = FragmentToJson(*bundle.gold);
  return j;
}

Bundle BundleFromJson(const json &j) {
  if (!j.is_object()) throw ParseError("bundle must be a JSON object");
  if (j.contains("format") && j.at("format") != std::string(kBundleFormat)) {
    throw ParseError("unsupported bundle format");
  }
  Bundle b;
  const json &meta = Require(j, "fragment", "bundle");
  b.meta.fragment_id = RequireString(meta, "fragment_id", "fragment");
  if (meta.contains("topic")) {
    const std::string topic = RequireString(meta, "topic", "fragment");
    const auto parsed = ParseTopic(topic);
    if (!parsed) throw ParseError("unknown topic '" + topic + "'");
    b.meta.topic = *parsed;
  }
  if (meta.contains("interviewer_turns")) {
    const json &turns = meta.at("interviewer_turns");
    if (!turns.is_array()) throw ParseError("interviewer_turns must be an array");
    for (const json &t : turns) {
      if (!t.is_array() || t.size() != 2) {
        throw ParseError("interviewer turn must be [start, length]");
      }
      b.meta.interviewer_turns.push_back(
          {RequireInt(t[0], "turn start"), RequireInt(t[1], "turn length")});
    }
  }
  b.raw_text = NormalizeText(RequireString(j, "raw_text", "bundle"));
  if (j.contains("reference") && !j.at("reference").is_null()) {
    b.reference = SegmentationFromJson(j.at("reference"), "reference");
  }
  if (j.contains("layers")) {
    const json &layers = j.at("layers");
    if (!layers.is_array()) throw ParseError("layers must be an array");
    for (const json &l : layers) b.layers.push_back(LayerFromJson(l));
  }
  if (j.contains("gold") && !j.at("gold").is_null()) {
    b.gold = FragmentFromJson(j.at("gold"));
  }
  return b;
}

Bundle ParseBundle(std::string_view input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::exception &e) {
    throw ParseError(std::string("bundle is not valid JSON: ") + e.what());
  }
  Bundle b;
  try {
    b = BundleFromJson(j);
  } catch (const json::exception &e) {
    throw ParseError(std::string("bad bundle: ") + e.what());
  }
  CheckBundle(b);
  return b;
}

std::string SerializeBundle(const Bundle &bundle) {
  return BundleToJson(bundle).dump(2) + "\n";
}

Bundle ReadBundleFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseBundle(buf.str());
}

void WriteBundleFile(const std::filesystem::path &path, const Bundle &bundle) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << SerializeBundle(bundle);
    if (!out.flush()) throw ParseError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Clause> SegmentClauses(const Bundle &bundle,
                                   const Segmentation &segmentation) {
  const std::u32string atoms = ToAtoms(bundle.raw_text);
  if (segmentation.atoms() != static_cast<int>(atoms.size())) {
    throw ValidationError("segmentation does not cover the transcript");
  }
  std::vector<Clause> out;
  int pos = 0;
  for (int i = 0; i < segmentation.segment_count(); ++i) {
    const int mass = segmentation.masses()[i];
    int from = pos;
    int to = pos + mass;
    while (from < to && atoms[from] == U' ') ++from;
    while (to > from && atoms[to - 1] == U' ') --to;
    Clause c;
    c.id = i + 1;
    c.text = FromAtoms(std::u32string_view(atoms).substr(from, to - from));
    const bool interviewer =
        to > from && std::any_of(bundle.meta.interviewer_turns.begin(),
                                 bundle.meta.interviewer_turns.end(),
                                 [&](const AtomRange &r) {
                                   return r.Contains(from, to);
                                 });
    c.speaker = interviewer ? Speaker::kInterviewer : Speaker::kInterviewee;
    out.push_back(std::move(c));
    pos += mass;
  }
  return out;
}

Fragment LayerToFragment(const Bundle &bundle, const AnnotatorLayer &layer) {
  Fragment f;
  f.fragment_id = bundle.meta.fragment_id;
  f.topic = bundle.meta.topic;
  f.clauses = SegmentClauses(bundle, LabelSegmentation(bundle, layer));
  for (Clause &c : f.clauses) {
    if (auto it = layer.micro.find(c.id); it != layer.micro.end()) {
      c.micro = it->second;
    }
    if (auto it = layer.macro.find(c.id); it != layer.macro.end()) {
      c.macro = it->second;
    }
  }
  f.spans = layer.spans;
  f.SortSpans();
  return f;
}

Bundle BundleFromFragment(const Fragment &fragment) {
  Bundle b;
  b.meta.fragment_id = fragment.fragment_id;
  b.meta.topic = fragment.topic;
  std::vector<int> masses;
  int pos = 0;
  for (size_t i = 0; i < fragment.clauses.size(); ++i) {
    const Clause &c = fragment.clauses[i];
    const std::string text = NormalizeText(c.text);
    const int len = AtomCount(text);
    if (len == 0) {
      throw ValidationError("clause " + std::to_string(c.id) +
                            " has no text to place in a transcript");
    }
    if (i > 0) b.raw_text += ' ';
    b.raw_text += text;
    if (c.speaker == Speaker::kInterviewer) {
      b.meta.interviewer_turns.push_back({pos, len});
    }
    const int mass = len + (i + 1 < fragment.clauses.size() ? 1 : 0);
    masses.push_back(mass);
    pos += mass;
  }
  b.reference = Segmentation(std::move(masses));
  b.gold = fragment;
  return b;
}

AnnotatorLayer LayerFromFragment(const Bundle &bundle, const Fragment &fragment,
                                 std::string annotator_id) {
  AnnotatorLayer layer;
  layer.annotator_id = std::move(annotator_id);
  layer.fragment_id = bundle.meta.fragment_id;
  layer.text_digest = TextDigest(bundle.raw_text);
  layer.clause_boundaries =
      bundle.reference ? *bundle.reference : Segmentation();
  layer.spans = fragment.spans;
  for (const Clause &c : fragment.clauses) {
    if (c.micro) layer.micro[c.id] = *c.micro;
    if (c.macro) layer.macro[c.id] = *c.macro;
  }
  return layer;
}

}  // namespace labov
