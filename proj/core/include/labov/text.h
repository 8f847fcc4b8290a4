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

#ifndef LABOV_TEXT_H_
#define LABOV_TEXT_H_

#include <string>
#include <string_view>

namespace labov {

// NFC-normalizes UTF-8 text, drops byte order marks, collapses every run of
// whitespace (including tabs, newlines and U+3000) into one ASCII space and
// trims both ends. Invalid UTF-8 throws ParseError.
std::string NormalizeText(std::string_view text);

// Unicode code points in UTF-8 text. These are the atoms that segmentations
// count.
std::u32string ToAtoms(std::string_view utf8);
std::string FromAtoms(std::u32string_view atoms);
int AtomCount(std::string_view utf8);

// Lowercases ASCII letters only.
std::u32string AsciiLower(std::u32string_view atoms);

// Lowercase hex SHA-256 of the bytes.
std::string Sha256Hex(std::string_view bytes);

// Digest identifying a transcript; `text` is expected to be normalized.
inline std::string TextDigest(std::string_view text) {
  return "sha256:" + Sha256Hex(text);
}

}  // namespace labov

#endif  // LABOV_TEXT_H_
