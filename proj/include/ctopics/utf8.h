// Copyright 2026 The ctopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTOPICS_UTF8_H_
#define CTOPICS_UTF8_H_

#include <string>
#include <string_view>

namespace ctopics::utf8 {

// Decodes one code point starting at `*pos` and advances it. Invalid or
// truncated sequences yield U+FFFD and consume one byte.
char32_t Decode(std::string_view text, size_t* pos);

void Append(char32_t cp, std::string* out);

// Letters of the Latin, Greek and Cyrillic blocks. Everything else (digits,
// punctuation, symbols, other scripts) is a token separator.
bool IsAlpha(char32_t cp);

// Simple one-to-one lowercase mapping for the blocks IsAlpha covers.
char32_t ToLower(char32_t cp);

std::string ToLower(std::string_view text);

}  // namespace ctopics::utf8

#endif  // CTOPICS_UTF8_H_
