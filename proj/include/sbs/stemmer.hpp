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
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sbs {

enum class Language { kEnglish, kItalian };

// Throws InputError for languages without a shipped rule set.
Language parse_language(std::string_view name);
std::string_view language_name(Language language);

// One pass of Porter's suffix-stripping algorithm, following the reference
// implementation published by Martin Porter (including its two departures
// from the 1980 paper: "bli" -> "ble" and "logi" -> "log"). Words that are not
// plain lowercase ASCII, or shorter than three letters, are returned as is.
std::string porter_stem_once(std::string_view word);

struct SuffixRule {
  std::string suffix;
  std::string replacement;
  std::size_t min_stem = 0;  // code points that must remain before the suffix
};

// A language-agnostic suffix stripper. Each pass applies the longest matching
// rule whose minimum stem length is satisfied.
//
// File format, one directive per line, '#' starts a comment:
//
//   name <identifier>
//   min_stem <n>                      default for the rules that follow
//   <suffix> <replacement> [min_stem] replacement "-" means delete
class SuffixRuleSet {
 public:
  static SuffixRuleSet parse(std::istream& in);
  static SuffixRuleSet load(const std::filesystem::path& path);
  static SuffixRuleSet italian_light();

  const std::string& name() const { return name_; }
  const std::vector<SuffixRule>& rules() const { return rules_; }

  std::string apply_once(std::string_view word) const;

 private:
  std::string name_ = "custom";
  std::vector<SuffixRule> rules_;  // longest suffix first
};

// Reduces words to stems. Stemming is iterated until the word stops changing,
// which makes stem() idempotent.
class Stemmer {
 public:
  static Stemmer none();
  static Stemmer for_language(Language language);
  static Stemmer from_rules(SuffixRuleSet rules);

  std::string stem(std::string_view token) const;

  bool enabled() const { return kind_ != Kind::kNone; }

  // "none", "english", or "rules:<name>".
  std::string describe() const;

 private:
  enum class Kind { kNone, kPorter, kRules };

  Kind kind_ = Kind::kNone;
  std::shared_ptr<const SuffixRuleSet> rules_;
};

std::string stem(std::string_view token, Language language);

}  // namespace sbs
