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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sbs/error.hpp"

namespace sbs {

using Date = std::chrono::year_month_day;

// Accepts "YYYY-MM-DD", optionally followed by a time part ("T..." or " ...")
// which is ignored. Throws InputError on anything else.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

// One news item. Text is kept verbatim.
struct Document {
  std::string id;
  Date date;
  std::string text;
  std::string source;

  bool operator==(const Document&) const = default;
};

// Document counts per source and per calendar month ("YYYY-MM").
struct CorpusManifest {
  std::size_t total = 0;
  std::map<std::string, std::size_t> per_source;
  std::map<std::string, std::size_t> per_period;

  bool operator==(const CorpusManifest&) const = default;
};

// Immutable, deterministically ordered (date, then id) document collection.
class Corpus {
 public:
  Corpus() = default;

  // Sorts the documents and computes the manifest. Throws InputError when two
  // documents share an id or an id is empty.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const CorpusManifest& manifest() const { return manifest_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  auto begin() const { return documents_.begin(); }
  auto end() const { return documents_.end(); }

 private:
  std::vector<Document> documents_;
  CorpusManifest manifest_;
};

enum class CorpusFormat { kJsonl, kCsv };

CorpusFormat parse_corpus_format(std::string_view name);

// A rejected input record.
struct Diagnostic {
  std::size_t line = 0;
  std::string reason;

  bool operator==(const Diagnostic&) const = default;
};

struct CorpusLoadResult {
  Corpus corpus;
  std::vector<Diagnostic> errors;    // malformed records, not loaded
  std::vector<std::string> warnings; // empty corpus, empty texts
};

// Thrown when a file cannot be read or too many records are malformed.
class CorpusLoadError : public InputError {
 public:
  CorpusLoadError(const std::string& what, std::vector<Diagnostic> diagnostics)
      : InputError(what), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Upper bound on the share of malformed records. A single bad record is
// always tolerated so that tiny files are not rejected outright.
inline constexpr double kMaxMalformedFraction = 0.10;

CorpusLoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);
CorpusLoadResult load_corpus(std::istream& in, CorpusFormat format);

// Keeps documents dated within [from, to] (inclusive) and, when given, whose
// source is in `sources`. Throws InputError when from > to.
Corpus filter_corpus(const Corpus& corpus, const Date& from, const Date& to,
                     const std::optional<std::set<std::string>>& sources = std::nullopt);

// One JSON object per line, in corpus order.
std::string to_jsonl(const Corpus& corpus);

// JSON array of {line, reason} objects.
std::string error_report_json(const std::vector<Diagnostic>& diagnostics);

}  // namespace sbs
