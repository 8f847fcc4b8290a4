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

#ifndef LABOV_LAT_FORMAT_H_
#define LABOV_LAT_FORMAT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "labov/model.h"

namespace labov {

// The .lat.tsv clause table: optional "# fragment: " and "# topic: " lines,
// then the header below, then one tab-separated row per clause:
//   idx speaker text story habitual hypothetical micro macro
// Span columns hold S, E, SE or nothing. See docs/format.md.
inline constexpr std::string_view kLatHeader =
    "idx\tspeaker\ttext\tstory\thabitual\thypothetical\tmicro\tmacro";
inline constexpr int kLatColumns = 8;

// Parses a clause table. Clause text is normalized. Spans are rebuilt from
// the S/E markers of each type column; an SE row yields a one-clause span,
// which CheckFragment rejects. Throws ParseError naming the line for
// unterminated or unopened spans, unknown tokens, duplicate idx values and
// malformed rows.
Fragment ParseLat(std::string_view input);

// Same, with the fragment id defaulting to the file name minus ".lat.tsv".
Fragment ReadLatFile(const std::filesystem::path &path);

// Canonical form: metadata lines, fixed header, single tabs, "\n" line ends.
std::string SerializeLat(const Fragment &fragment);

void WriteLatFile(const std::filesystem::path &path, const Fragment &fragment);

}  // namespace labov

#endif  // LABOV_LAT_FORMAT_H_
