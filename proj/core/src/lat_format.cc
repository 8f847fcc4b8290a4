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

#include "labov/lat_format.h"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "labov/errors.h"
#include "labov/text.h"

namespace labov {
namespace {

constexpr std::string_view kFragmentKey = "# fragment:";
constexpr std::string_view kTopicKey = "# topic:";

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

int TypeColumn(NarrativeType t) {
  switch (t) {
    case NarrativeType::kStory: return 3;
    case NarrativeType::kHabitual: return 4;
    case NarrativeType::kHypothetical: return 5;
  }
  return 3;
}

struct OpenSpan {
  int clause = 0;
  int line = 0;
};

}  // namespace

Fragment ParseLat(std::string_view input) {
  if (input.substr(0, 3) == "\xEF\xBB\xBF") input.remove_prefix(3);
  Fragment fragment;
  bool have_header = false;
  std::set<int> seen_ids;
  std::array<std::optional<OpenSpan>, 3> open;

  const std::vector<std::string_view> lines = Split(input, '\n');
  int line_no = 0;
  for (std::string_view raw : lines) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!have_header) {
      if (Trim(line).empty()) continue;
      if (line.starts_with(kFragmentKey)) {
        fragment.fragment_id = std::string(Trim(line.substr(kFragmentKey.size())));
        continue;
      }
      if (line.starts_with(kTopicKey)) {
        const std::string_view value = Trim(line.substr(kTopicKey.size()));
        const auto topic = ParseTopic(value);
        if (!topic) {
          throw ParseError("unknown topic '" + std::string(value) + "'", line_no);
        }
        fragment.topic = *topic;
        continue;
      }
      if (line.starts_with("#")) continue;
      if (line != kLatHeader) {
        throw ParseError("expected header row '" +
                             std::string(kLatHeader) + "'",
                         line_no);
      }
      have_header = true;
      continue;
    }
    if (Trim(line).empty()) continue;

    std::vector<std::string_view> cells = Split(line, '\t');
    if (cells.size() > static_cast<size_t>(kLatColumns)) {
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " columns, expected " + std::to_string(kLatColumns),
                       line_no);
    }
    if (cells.size() < 3) {
      throw ParseError("row needs at least idx, speaker and text", line_no);
    }
    // Editors often drop trailing empty cells.
    cells.resize(kLatColumns, std::string_view());

    Clause clause;
    const std::string_view idx = Trim(cells[0]);
    const auto [ptr, ec] =
        std::from_chars(idx.data(), idx.data() + idx.size(), clause.id);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || clause.id < 1) {
      throw ParseError("bad clause index '" + std::string(idx) + "'", line_no);
    }
    if (!seen_ids.insert(clause.id).second) {
      throw ParseError("duplicate clause index " + std::to_string(clause.id),
                       line_no);
    }
    const std::string_view speaker = Trim(cells[1]);
    const auto parsed_speaker = ParseSpeaker(speaker);
    if (!parsed_speaker) {
      throw ParseError("unknown speaker '" + std::string(speaker) + "'", line_no);
    }
    clause.speaker = *parsed_speaker;
    clause.text = NormalizeText(cells[2]);

    for (NarrativeType kind : kAllNarrativeTypes) {
      const std::string_view mark = Trim(cells[TypeColumn(kind)]);
      const std::string name(NarrativeTypeName(kind));
      auto &slot = open[static_cast<int>(kind)];
      if (mark.empty()) continue;
      if (mark == "S" || mark == "SE") {
        if (slot) {
          throw ParseError(name + " span opened at clause " +
                               std::to_string(slot->clause) +
                               " is opened again at clause " +
                               std::to_string(clause.id) + " before its E",
                           line_no);
        }
        if (mark == "SE") {
          fragment.spans.push_back({kind, clause.id, clause.id});
        } else {
          slot = OpenSpan{clause.id, line_no};
        }
      } else if (mark == "E") {
        if (!slot) {
          throw ParseError(name + " span closed at clause " +
                               std::to_string(clause.id) + " was never opened",
                           line_no);
        }
        fragment.spans.push_back({kind, slot->clause, clause.id});
        slot.reset();
      } else {
        throw ParseError("unknown " + name + " span marker '" +
                             std::string(mark) + "'",
                         line_no);
      }
    }

    const std::string_view micro = Trim(cells[6]);
    if (!micro.empty()) {
      clause.micro = ParseMicro(micro);
      if (!clause.micro) {
        throw ParseError("unknown micro label '" + std::string(micro) + "'",
                         line_no);
      }
    }
    const std::string_view macro = Trim(cells[7]);
    if (!macro.empty()) {
      clause.macro = ParseMacro(macro);
      if (!clause.macro) {
        throw ParseError("unknown macro label '" + std::string(macro) + "'",
                         line_no);
      }
    }
    fragment.clauses.push_back(std::move(clause));
  }
  if (!have_header) throw ParseError("missing header row");
  for (NarrativeType kind : kAllNarrativeTypes) {
    const auto &slot = open[static_cast<int>(kind)];
    if (slot) {
      throw ParseError("unterminated " + std::string(NarrativeTypeName(kind)) +
                           " span opened at clause " +
                           std::to_string(slot->clause),
                       slot->line);
    }
  }
  fragment.SortSpans();
  return fragment;
}

Fragment ReadLatFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Fragment f = ParseLat(buf.str());
  if (f.fragment_id.empty()) {
    std::string name = path.filename().string();
    for (std::string_view ext : {".lat.tsv", ".tsv"}) {
      if (name.ends_with(ext)) {
        name.resize(name.size() - ext.size());
        break;
      }
    }
    f.fragment_id = name;
  }
  return f;
}

std::string SerializeLat(const Fragment &fragment) {
  std::string out;
  out += kFragmentKey;
  out += ' ';
  out += fragment.fragment_id;
  out += '\n';
  out += kTopicKey;
  out += ' ';
  out += TopicName(fragment.topic);
  out += '\n';
  out += kLatHeader;
  out += '\n';
  for (const Clause &c : fragment.clauses) {
    out += std::to_string(c.id);
    out += '\t';
    out += SpeakerToken(c.speaker);
    out += '\t';
    out += c.text;
    for (NarrativeType kind : kAllNarrativeTypes) {
      bool starts = false;
      bool ends = false;
      for (const NarrativeSpan &s : fragment.spans) {
        if (s.kind != kind) continue;
        starts |= s.start == c.id;
        ends |= s.end == c.id;
      }
      out += '\t';
      if (starts) out += 'S';
      if (ends) out += 'E';
    }
    out += '\t';
    if (c.micro) out += MicroToken(*c.micro);
    out += '\t';
    if (c.macro) out += MacroToken(*c.macro);
    out += '\n';
  }
  return out;
}

void WriteLatFile(const std::filesystem::path &path, const Fragment &fragment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << SerializeLat(fragment);
}

}  // namespace labov
