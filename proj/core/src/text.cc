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

#include "labov/text.h"

#include <openssl/evp.h>

#include <array>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "labov/errors.h"

namespace labov {
namespace {

bool IsSpaceAtom(char32_t c) {
  return c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' ||
         c == U' ' || c == 0x00A0 || c == 0x3000 ||
         u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_WHITE_SPACE);
}

}  // namespace

std::u32string ToAtoms(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto *s = reinterpret_cast<const uint8_t *>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    const int32_t at = i;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw ParseError("invalid UTF-8 at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string FromAtoms(std::u32string_view atoms) {
  std::string out;
  out.reserve(atoms.size());
  for (char32_t c : atoms) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw ParseError("code point out of range");
    out.append(reinterpret_cast<const char *>(buf), len);
  }
  return out;
}

int AtomCount(std::string_view utf8) {
  return static_cast<int>(ToAtoms(utf8).size());
}

std::u32string AsciiLower(std::u32string_view atoms) {
  std::u32string out(atoms);
  for (char32_t &c : out) {
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
  }
  return out;
}

std::string NormalizeText(std::string_view text) {
  // Validate first so the error names a byte offset.
  ToAtoms(text);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw ParseError("NFC normalizer unavailable");
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) throw ParseError("NFC normalization failed");
  std::string nfc_utf8;
  normalized.toUTF8String(nfc_utf8);

  std::u32string out;
  bool pending_space = false;
  for (char32_t c : ToAtoms(nfc_utf8)) {
    if (c == 0xFEFF) continue;
    if (IsSpaceAtom(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return FromAtoms(out);
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int md_len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &md_len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(md_len * 2);
  for (unsigned int i = 0; i < md_len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace labov
