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

#include "sbs/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "sbs/csv.hpp"

namespace sbs {
namespace {

using nlohmann::json;

std::string period_key(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()));
  return buf;
}

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return -1;
  return value;
}

// Collects records of either format before the corpus is assembled.
struct Collector {
  std::vector<Document> documents;
  std::vector<std::size_t> lines;
  std::vector<Diagnostic> errors;
  std::size_t records = 0;

  void add(std::size_t line, std::optional<std::string> id, std::optional<std::string> date,
           std::optional<std::string> text, std::optional<std::string> source) {
    ++records;
    if (!id || id->empty()) {
      errors.push_back({line, "missing or empty field `id`"});
      return;
    }
    if (!date) {
      errors.push_back({line, "missing field `date`"});
      return;
    }
    if (!text) {
      errors.push_back({line, "missing field `text`"});
      return;
    }
    Document doc;
    try {
      doc.date = parse_date(*date);
    } catch (const InputError& e) {
      errors.push_back({line, e.what()});
      return;
    }
    doc.id = std::move(*id);
    doc.text = std::move(*text);
    doc.source = source.value_or("");
    documents.push_back(std::move(doc));
    lines.push_back(line);
  }

  CorpusLoadResult finish() {
    const std::size_t allowed =
        std::max<std::size_t>(1, static_cast<std::size_t>(kMaxMalformedFraction * records));
    if (errors.size() > allowed) {
      throw CorpusLoadError(std::to_string(errors.size()) + " of " + std::to_string(records) +
                                " records are malformed",
                            errors);
    }

    std::unordered_map<std::string, std::size_t> first_seen;
    std::vector<Diagnostic> duplicates;
    for (std::size_t i = 0; i < documents.size(); ++i) {
      auto [it, inserted] = first_seen.emplace(documents[i].id, lines[i]);
      if (!inserted) {
        duplicates.push_back({lines[i], "duplicate id `" + documents[i].id +
                                            "` (first seen on line " +
                                            std::to_string(it->second) + ")"});
      }
    }
    if (!duplicates.empty()) {
      throw CorpusLoadError("duplicate document ids", duplicates);
    }

    CorpusLoadResult result;
    if (records == 0) result.warnings.push_back("corpus is empty");
    for (const auto& doc : documents) {
      if (doc.text.empty()) result.warnings.push_back("document `" + doc.id + "` has empty text");
    }
    result.corpus = Corpus(std::move(documents));
    result.errors = std::move(errors);
    return result;
  }
};

std::optional<std::string> json_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  return std::nullopt;
}

void read_jsonl(std::istream& in, Collector& collector) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      ++collector.records;
      collector.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object()) {
      ++collector.records;
      collector.errors.push_back({line_no, "record is not a JSON object"});
      continue;
    }
    auto text_it = obj.find("text");
    if (text_it != obj.end() && !text_it->is_string()) {
      ++collector.records;
      collector.errors.push_back({line_no, "field `text` is not a string"});
      continue;
    }
    collector.add(line_no, json_string(obj, "id"), json_string(obj, "date"),
                  json_string(obj, "text"), json_string(obj, "source"));
  }
}

void read_csv(std::istream& in, Collector& collector) {
  csv::Reader reader(in);
  csv::Record header;
  if (!reader.next(header)) return;
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.fields.size(); ++i) columns[header.fields[i]] = i;
  for (const char* required : {"id", "date", "text"}) {
    if (!columns.count(required)) {
      throw CorpusLoadError(std::string("CSV header lacks column `") + required + "`",
                            {{header.line, "missing column"}});
    }
  }
  const auto field = [&](const csv::Record& rec,
                         const std::string& name) -> std::optional<std::string> {
    auto it = columns.find(name);
    if (it == columns.end() || it->second >= rec.fields.size()) return std::nullopt;
    return rec.fields[it->second];
  };
  csv::Record rec;
  while (reader.next(rec)) {
    if (rec.fields.size() != header.fields.size()) {
      ++collector.records;
      collector.errors.push_back({rec.line, "expected " + std::to_string(header.fields.size()) +
                                                " fields, found " +
                                                std::to_string(rec.fields.size())});
      continue;
    }
    collector.add(rec.line, field(rec, "id"), field(rec, "date"), field(rec, "text"),
                  field(rec, "source"));
  }
}

}  // namespace

Date parse_date(std::string_view text) {
  const auto fail = [&]() -> Date {
    throw InputError("invalid date `" + std::string(text) + "` (expected YYYY-MM-DD)");
  };
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return fail();
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return fail();
  const int y = parse_int(text.substr(0, 4));
  const int m = parse_int(text.substr(5, 2));
  const int d = parse_int(text.substr(8, 2));
  if (y < 0 || m < 0 || d < 0) return fail();
  const Date date{std::chrono::year(y), std::chrono::month(static_cast<unsigned>(m)),
                  std::chrono::day(static_cast<unsigned>(d))};
  if (!date.ok()) return fail();
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(), [](const Document& a, const Document& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.id < b.id;
  });
  std::vector<const std::string*> ids;
  ids.reserve(documents_.size());
  for (const auto& doc : documents_) {
    if (doc.id.empty()) throw InputError("document with empty id");
    ids.push_back(&doc.id);
  }
  std::sort(ids.begin(), ids.end(), [](auto* a, auto* b) { return *a < *b; });
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (*ids[i] == *ids[i - 1]) throw InputError("duplicate document id `" + *ids[i] + "`");
  }

  manifest_.total = documents_.size();
  for (const auto& doc : documents_) {
    ++manifest_.per_source[doc.source];
    ++manifest_.per_period[period_key(doc.date)];
  }
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "csv") return CorpusFormat::kCsv;
  throw InputError("unknown corpus format `" + std::string(name) + "` (expected jsonl or csv)");
}

CorpusLoadResult load_corpus(std::istream& in, CorpusFormat format) {
  Collector collector;
  if (format == CorpusFormat::kJsonl) {
    read_jsonl(in, collector);
  } else {
    read_csv(in, collector);
  }
  return collector.finish();
}

CorpusLoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusLoadError("cannot read corpus file " + path.string(), {});
  return load_corpus(in, format);
}

Corpus filter_corpus(const Corpus& corpus, const Date& from, const Date& to,
                     const std::optional<std::set<std::string>>& sources) {
  if (to < from) {
    throw InputError("inverted date range: " + format_date(from) + " > " + format_date(to));
  }
  std::vector<Document> kept;
  for (const auto& doc : corpus) {
    if (doc.date < from || to < doc.date) continue;
    if (sources && !sources->count(doc.source)) continue;
    kept.push_back(doc);
  }
  return Corpus(std::move(kept));
}

std::string to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus) {
    json obj = {{"id", doc.id}, {"date", format_date(doc.date)}, {"text", doc.text},
                {"source", doc.source}};
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::string error_report_json(const std::vector<Diagnostic>& diagnostics) {
  json report = json::array();
  for (const auto& d : diagnostics) report.push_back({{"line", d.line}, {"reason", d.reason}});
  return report.dump(2);
}

}  // namespace sbs
