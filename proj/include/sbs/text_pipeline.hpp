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
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sbs/stemmer.hpp"

namespace sbs {

// A brand and the surface forms that refer to it. The canonical form becomes
// a single graph node, so it must be one lowercase word (letters, digits, '_').
struct BrandSpec {
  std::string canonical;
  std::vector<std::string> aliases;

  bool operator==(const BrandSpec&) const = default;
};

// Throws InputError on duplicate canonicals, malformed canonicals, empty
// aliases, or an alias claimed by two brands.
void validate_brand_specs(const std::vector<BrandSpec>& brands);

// Parses a JSON array of {"canonical": ..., "aliases": [...]}, validated.
std::vector<BrandSpec> parse_brand_specs(std::string_view json_text);
std::vector<BrandSpec> load_brand_specs(const std::filesystem::path& path);

// Compiled alias index. Matching is case-insensitive and whole-word; at every
// position the alias with the most words wins, and runs of whitespace inside
// an alias match any run of whitespace in the text.
class BrandMatcher {
 public:
  explicit BrandMatcher(const std::vector<BrandSpec>& brands);

  // Replaces every alias occurrence with its canonical token. When
  // `replacements` is given it receives the number of substitutions made.
  std::string collapse(std::string_view text, std::size_t* replacements = nullptr) const;

 private:
  struct Alias {
    std::vector<std::string> words;
    std::vector<std::string> gaps;  // normalized separators between words
    std::size_t length = 0;         // byte length, tie breaker
    std::size_t brand = 0;
  };

  std::vector<std::string> canonicals_;
  std::vector<Alias> aliases_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_word_;
};

std::string collapse_brands(std::string_view text, const std::vector<BrandSpec>& brands);

struct PipelineConfig {
  std::unordered_set<std::string> stopwords;
  Stemmer stemmer = Stemmer::none();
  bool lowercase = true;
  std::size_t min_token_length = 2;
  bool drop_numeric = true;
  // Brand canonicals. They bypass stopword, length and stemming filters.
  std::unordered_set<std::string> protected_tokens;
};

// A small general-purpose English stop list.
std::unordered_set<std::string> default_english_stopwords();

// UTF-8, one word per line; blank lines and lines starting with '#' ignored.
// Entries are lowercased.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

struct TokenSequence {
  std::string doc_id;
  std::vector<std::string> tokens;

  bool operator==(const TokenSequence&) const = default;
};

// Stateful preprocessor that memoizes stems. Not thread-safe; use one per
// worker. Output is identical to preprocess().
class Preprocessor {
 public:
  explicit Preprocessor(const PipelineConfig& config) : config_(config) {}

  TokenSequence run(std::string_view text, std::string doc_id = {});

  // Appends the normalized tokens of `text` to `out`.
  void append_tokens(std::string_view text, std::vector<std::string>& out);

 private:
  const std::string& cached_stem(const std::string& word);

  const PipelineConfig& config_;
  std::unordered_map<std::string, std::string> stems_;
};

// Tokenizes already brand-collapsed text into normalized tokens.
TokenSequence preprocess(std::string_view text, const PipelineConfig& config,
                         std::string doc_id = {});

}  // namespace sbs
