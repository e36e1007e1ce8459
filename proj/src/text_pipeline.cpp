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

#include "sbs/text_pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sbs/error.hpp"
#include "sbs/unicode.hpp"

namespace sbs {
namespace {

constexpr const char* kEnglishStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any",
    "are", "as", "at", "be", "because", "been", "before", "being", "below", "between",
    "both", "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during",
    "each", "few", "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "into",
    "is", "it", "its", "itself", "just", "me", "more", "most", "my", "myself", "no", "nor",
    "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours",
    "ourselves", "out", "over", "own", "same", "she", "should", "so", "some", "such",
    "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom",
    "why", "will", "with", "would", "you", "your", "yours", "yourself", "yourselves",
};

// Collapses whitespace runs to one space and lowercases everything else.
std::string normalize_gap(std::string_view gap) {
  std::string out;
  bool in_space = false;
  for (char c : gap) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return unicode::to_lower(out);
}

bool single_word(std::string_view token) {
  const auto spans = unicode::word_spans(token);
  return spans.size() == 1 && spans[0].begin == 0 && spans[0].end == token.size() &&
         token.find_first_of(".,") == std::string_view::npos;
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

struct TokenShape {
  bool has_alnum = false;
  bool numeric = true;
};

TokenShape shape_of(std::string_view token) {
  TokenShape shape;
  std::size_t pos = 0;
  while (pos < token.size()) {
    const char32_t cp = unicode::decode(token, pos);
    if (cp == '_') {
      shape.numeric = false;
      continue;
    }
    shape.has_alnum = true;
    if (!unicode::is_digit(cp)) shape.numeric = false;
  }
  if (!shape.has_alnum) shape.numeric = false;
  return shape;
}

}  // namespace

void validate_brand_specs(const std::vector<BrandSpec>& brands) {
  std::unordered_set<std::string> canonicals;
  std::unordered_map<std::string, std::string> alias_owner;
  for (const auto& brand : brands) {
    if (brand.canonical.empty()) throw InputError("brand with empty canonical token");
    if (!single_word(brand.canonical) || unicode::to_lower(brand.canonical) != brand.canonical) {
      throw InputError("brand canonical `" + brand.canonical +
                       "` must be a single lowercase word (letters, digits, '_')");
    }
    if (!canonicals.insert(brand.canonical).second) {
      throw InputError("duplicate brand canonical `" + brand.canonical + "`");
    }
    for (const auto& alias : brand.aliases) {
      if (unicode::word_spans(alias).empty()) {
        throw InputError("brand `" + brand.canonical + "` has an empty alias");
      }
      const std::string key = normalize_gap(alias);
      auto [it, inserted] = alias_owner.emplace(key, brand.canonical);
      if (!inserted && it->second != brand.canonical) {
        throw InputError("alias `" + alias + "` maps to both `" + it->second + "` and `" +
                         brand.canonical + "`");
      }
    }
  }
}

std::vector<BrandSpec> parse_brand_specs(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("brand spec: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("brand spec must be a JSON array");
  std::vector<BrandSpec> brands;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("canonical") || !item["canonical"].is_string()) {
      throw InputError("brand spec entries need a string `canonical`");
    }
    BrandSpec spec;
    spec.canonical = item["canonical"].get<std::string>();
    if (item.contains("aliases")) {
      if (!item["aliases"].is_array()) throw InputError("brand spec `aliases` must be an array");
      for (const auto& alias : item["aliases"]) {
        if (!alias.is_string()) throw InputError("brand aliases must be strings");
        spec.aliases.push_back(alias.get<std::string>());
      }
    }
    brands.push_back(std::move(spec));
  }
  validate_brand_specs(brands);
  return brands;
}

std::vector<BrandSpec> load_brand_specs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read brand spec file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_brand_specs(buffer.str());
}

BrandMatcher::BrandMatcher(const std::vector<BrandSpec>& brands) {
  validate_brand_specs(brands);
  for (std::size_t b = 0; b < brands.size(); ++b) {
    canonicals_.push_back(brands[b].canonical);
    for (const auto& surface : brands[b].aliases) {
      const auto spans = unicode::word_spans(surface);
      Alias alias;
      alias.brand = b;
      alias.length = surface.size();
      for (std::size_t i = 0; i < spans.size(); ++i) {
        alias.words.push_back(
            unicode::to_lower(surface.substr(spans[i].begin, spans[i].end - spans[i].begin)));
        if (i > 0) {
          alias.gaps.push_back(normalize_gap(
              std::string_view(surface).substr(spans[i - 1].end, spans[i].begin - spans[i - 1].end)));
        }
      }
      by_first_word_[alias.words.front()].push_back(aliases_.size());
      aliases_.push_back(std::move(alias));
    }
  }
  for (auto& [word, candidates] : by_first_word_) {
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      if (aliases_[a].words.size() != aliases_[b].words.size()) {
        return aliases_[a].words.size() > aliases_[b].words.size();
      }
      return aliases_[a].length > aliases_[b].length;
    });
  }
}

std::string BrandMatcher::collapse(std::string_view text, std::size_t* replacements) const {
  std::size_t count = 0;
  if (aliases_.empty()) {
    if (replacements) *replacements = 0;
    return std::string(text);
  }
  const auto spans = unicode::word_spans(text);
  std::vector<std::string> words;
  words.reserve(spans.size());
  for (const auto& span : spans) {
    words.push_back(unicode::to_lower(text.substr(span.begin, span.end - span.begin)));
  }

  std::string out;
  out.reserve(text.size());
  std::size_t copied = 0;
  std::size_t i = 0;
  while (i < spans.size()) {
    auto it = by_first_word_.find(words[i]);
    const Alias* match = nullptr;
    if (it != by_first_word_.end()) {
      for (std::size_t index : it->second) {
        const Alias& alias = aliases_[index];
        const std::size_t n = alias.words.size();
        if (i + n > spans.size()) continue;
        bool ok = true;
        for (std::size_t t = 1; t < n && ok; ++t) {
          ok = words[i + t] == alias.words[t] &&
               normalize_gap(text.substr(spans[i + t - 1].end,
                                         spans[i + t].begin - spans[i + t - 1].end)) ==
                   alias.gaps[t - 1];
        }
        if (ok) {
          match = &alias;
          break;
        }
      }
    }
    if (!match) {
      ++i;
      continue;
    }
    const std::size_t last = i + match->words.size() - 1;
    out.append(text.substr(copied, spans[i].begin - copied));
    out.append(canonicals_[match->brand]);
    copied = spans[last].end;
    ++count;
    i = last + 1;
  }
  out.append(text.substr(copied));
  if (replacements) *replacements = count;
  return out;
}

std::string collapse_brands(std::string_view text, const std::vector<BrandSpec>& brands) {
  return BrandMatcher(brands).collapse(text);
}

std::unordered_set<std::string> default_english_stopwords() {
  return {std::begin(kEnglishStopwords), std::end(kEnglishStopwords)};
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stopword file " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    words.insert(unicode::to_lower(line.substr(first, last - first + 1)));
  }
  return words;
}

const std::string& Preprocessor::cached_stem(const std::string& word) {
  auto it = stems_.find(word);
  if (it == stems_.end()) it = stems_.emplace(word, config_.stemmer.stem(word)).first;
  return it->second;
}

void Preprocessor::append_tokens(std::string_view text, std::vector<std::string>& out) {
  for (const auto& span : unicode::word_spans(text)) {
    const std::string_view raw = text.substr(span.begin, span.end - span.begin);
    std::string token = config_.lowercase ? unicode::to_lower(raw) : std::string(raw);
    if (config_.protected_tokens.count(token)) {
      out.push_back(std::move(token));
      continue;
    }
    // Drop the '.' and ',' that the tokenizer keeps inside "u.s.a" or "3.5".
    std::erase_if(token, [](char c) { return c == '.' || c == ','; });

    const TokenShape shape = shape_of(token);
    if (!shape.has_alnum) continue;
    if (config_.drop_numeric && shape.numeric) continue;
    if (code_points(token) < config_.min_token_length) continue;
    if (config_.stopwords.count(token)) continue;
    if (config_.stemmer.enabled()) {
      const std::string& stemmed = cached_stem(token);
      // A word must not turn into a brand node by stemming.
      if (config_.protected_tokens.count(stemmed)) {
        out.push_back(std::move(token));
        continue;
      }
      if (code_points(stemmed) < config_.min_token_length || config_.stopwords.count(stemmed)) {
        continue;
      }
      out.push_back(stemmed);
    } else {
      out.push_back(std::move(token));
    }
  }
}

TokenSequence Preprocessor::run(std::string_view text, std::string doc_id) {
  TokenSequence seq;
  seq.doc_id = std::move(doc_id);
  append_tokens(text, seq.tokens);
  return seq;
}

TokenSequence preprocess(std::string_view text, const PipelineConfig& config,
                         std::string doc_id) {
  Preprocessor pre(config);
  return pre.run(text, std::move(doc_id));
}

}  // namespace sbs
