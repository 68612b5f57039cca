// Copyright 2026 The adrpipe Authors.
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

#ifndef ADRPIPE_TEXT_H_
#define ADRPIPE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the preprocessor, tokenizer and feature extractor.
namespace adrpipe::text {

// Decodes the code point starting at byte offset *pos and advances *pos past
// it. Malformed sequences decode to U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t* pos);

void append_utf8(char32_t cp, std::string* out);

// Number of code points (malformed bytes count as one each).
std::size_t code_point_count(std::string_view s);

// Byte offsets of every code point boundary, including 0 and s.size().
std::vector<std::size_t> code_point_boundaries(std::string_view s);

bool is_space(char32_t cp);
bool is_ascii_punct(char32_t cp);

// Word delimiters: Unicode whitespace plus ASCII punctuation other than '-'
// and '\''. Hyphenated drug names stay a single word.
bool is_word_delimiter(char32_t cp);

// Simple (one-to-one) lowercase mapping for ASCII, Latin-1, Latin
// Extended-A, Greek, Cyrillic and fullwidth Latin. Other code points map to
// themselves.
char32_t to_lower(char32_t cp);
inline bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

std::string to_lower(std::string_view s);
bool has_upper(std::string_view s);

// Replaces every run of whitespace with one ASCII space and trims both ends.
std::string collapse_whitespace(std::string_view s);

// Splits on Unicode whitespace, dropping empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view s);

}  // namespace adrpipe::text

#endif  // ADRPIPE_TEXT_H_
