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

#ifndef LABOV_BUNDLE_H_
#define LABOV_BUNDLE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labov/model.h"
#include "labov/segmentation.h"

namespace labov {

inline constexpr std::string_view kBundleFormat = "labov-bundle/1";

// Atoms [start, start + length) of the transcript spoken by the interviewer.
struct AtomRange {
  int start = 0;
  int length = 0;

  bool Contains(int from, int to) const {  // [from, to)
    return from >= start && to <= start + length;
  }
  bool operator==(const AtomRange &) const = default;
};

struct FragmentMeta {
  std::string fragment_id;
  Topic topic = Topic::kOther;
  std::vector<AtomRange> interviewer_turns;

  bool operator==(const FragmentMeta &) const = default;
};

// Several annotators' work on one transcript fragment.
struct Bundle {
  FragmentMeta meta;
  std::string raw_text;  // normalized
  std::optional<Segmentation> reference;
  std::vector<AnnotatorLayer> layers;
  std::optional<Fragment> gold;

  const AnnotatorLayer *FindLayer(std::string_view annotator) const;
  AnnotatorLayer *FindLayer(std::string_view annotator);

  bool operator==(const Bundle &) const = default;
};

// Structural checks shared by the parser and by writers: every layer names
// this fragment, carries the digest of raw_text, segments exactly raw_text
// and only refers to clauses of its label basis. Throws ValidationError
// naming the annotator and clause id.
void CheckBundle(const Bundle &bundle);
void CheckLayer(const Bundle &bundle, const AnnotatorLayer &layer);

// JSON <-> values. The *Json functions throw ParseError on schema errors.
nlohmann::ordered_json FragmentToJson(const Fragment &fragment);
Fragment FragmentFromJson(const nlohmann::json &json);
nlohmann::ordered_json LayerToJson(const AnnotatorLayer &layer);
AnnotatorLayer LayerFromJson(const nlohmann::json &json);
nlohmann::ordered_json BundleToJson(const Bundle &bundle);
Bundle BundleFromJson(const nlohmann::json &json);

// Parses and checks a bundle document.
Bundle ParseBundle(std::string_view input);
// Two-space indented JSON with a fixed key order and a trailing newline.
std::string SerializeBundle(const Bundle &bundle);

Bundle ReadBundleFile(const std::filesystem::path &path);
// Writes to a temporary file next to `path` and renames it into place.
void WriteBundleFile(const std::filesystem::path &path, const Bundle &bundle);

// Clause segmentation a layer's labels refer to.
const Segmentation &LabelSegmentation(const Bundle &bundle,
                                      const AnnotatorLayer &layer);

// Clauses cut from raw_text by a segmentation. A segment is an interviewer
// unit when it lies inside one of the interviewer turns.
std::vector<Clause> SegmentClauses(const Bundle &bundle,
                                   const Segmentation &segmentation);

// A layer viewed as a fragment (for linting).
Fragment LayerToFragment(const Bundle &bundle, const AnnotatorLayer &layer);

// A single-fragment bundle whose reference segmentation and gold are the
// given fragment. Clause texts are joined with one space; each separator
// belongs to the clause before it.
Bundle BundleFromFragment(const Fragment &fragment);

// An annotator layer reproducing the fragment's spans and labels over the
// bundle built by BundleFromFragment.
AnnotatorLayer LayerFromFragment(const Bundle &bundle, const Fragment &fragment,
                                 std::string annotator_id);

}  // namespace labov

#endif  // LABOV_BUNDLE_H_
