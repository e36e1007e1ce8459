// Copyright 2026 The SBS Authors.
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sbs::unicode {

// Decodes one code point starting at `pos` and advances `pos`. Invalid bytes
// decode as U+FFFD and consume a single byte.
char32_t decode(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Letters, digits, combining marks and connector punctuation ('_'). Everything
// else (whitespace, punctuation, symbols, emoji) separates words.
bool is_word_char(char32_t cp);

bool is_digit(char32_t cp);

// Simple one-to-one lowercase mapping covering ASCII, Latin-1, Latin
// Extended-A, Greek and Cyrillic. The mapping never changes the UTF-8 length
// of a code point, so byte offsets survive folding.
char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view s);

// A word found in a text, as a byte range into the original string.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Splits text at word boundaries. Runs of word characters form words; a
// single '.' or ',' between two digits, and a single '.' between two letters,
// stay inside the word ("3.5", "u.s.a"). Apostrophes always split, so elided
// forms such as "l'azienda" yield two words.
std::vector<WordSpan> word_spans(std::string_view text);

}  // namespace sbs::unicode
