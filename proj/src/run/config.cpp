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

#include "sbs/run/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sbs/corpus.hpp"
#include "sbs/error.hpp"
#include "sbs/stats/correlation.hpp"
#include "sbs/stats/ols.hpp"

namespace sbs::run {
namespace {

using nlohmann::json;

constexpr std::string_view kRulesPrefix = "rules:";

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config key `") + key + "` has the wrong type");
  }
}

void require_one_of(std::string_view what, std::string_view value,
                    std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (value == a) return;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw InputError("invalid " + std::string(what) + " `" + std::string(value) + "` (expected " +
                   list + ")");
}

bool needs_corpus(const RunConfig& c, Command command) {
  return command == Command::kCompute || command == Command::kRobustness ||
         ((command == Command::kRegress || command == Command::kMargins) && c.scores.empty() &&
          !c.corpus.empty());
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "compute") return Command::kCompute;
  if (name == "regress") return Command::kRegress;
  if (name == "margins") return Command::kMargins;
  if (name == "robustness") return Command::kRobustness;
  if (name == "stats") return Command::kStats;
  throw InputError("unknown command `" + std::string(name) + "`");
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::kCompute:
      return "compute";
    case Command::kRegress:
      return "regress";
    case Command::kMargins:
      return "margins";
    case Command::kRobustness:
      return "robustness";
    case Command::kStats:
      return "stats";
  }
  return "";
}

void set_betweenness(RunConfig& config, std::string_view value) {
  if (!value.starts_with("approx:")) {
    config.betweenness = value;
    return;
  }
  const std::string rest(value.substr(7));
  const auto comma = rest.find(',');
  try {
    std::size_t used = 0;
    const std::string k = rest.substr(0, comma);
    config.pivots = std::stoull(k, &used);
    if (used != k.size()) throw std::invalid_argument("pivots");
    if (comma != std::string::npos) {
      const std::string s = rest.substr(comma + 1);
      config.seed = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("seed");
    }
  } catch (const std::exception&) {
    throw InputError("betweenness `" + std::string(value) + "`: expected approx:<k>,<seed>");
  }
  config.betweenness = "approx";
}

void merge_json(RunConfig& c, const json& input) {
  if (!input.is_object()) throw InputError("config must be a JSON object");
  const json& j = input.contains("config") && input["config"].is_object() ? input["config"] : input;
  static const std::set<std::string> kKeys = {
      "corpus", "format", "from", "to", "sources", "brands", "stopwords", "stemmer",
      "lowercase", "min_token_length", "drop_numeric", "window", "min_edge_weight",
      "export_graph", "std_base", "betweenness", "pivots", "seed", "exact_node_cap",
      "distance", "slice", "lexicon", "data", "models", "scores", "join_column", "robust",
      "focal", "moderator", "grid", "variables", "tetrachoric", "windows", "threads", "out"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw InputError("unknown config key `" + key + "`");
  }
  read(j, "corpus", c.corpus);
  read(j, "format", c.format);
  read(j, "from", c.from);
  read(j, "to", c.to);
  read(j, "sources", c.sources);
  read(j, "brands", c.brands);
  read(j, "stopwords", c.stopwords);
  read(j, "stemmer", c.stemmer);
  read(j, "lowercase", c.lowercase);
  read(j, "min_token_length", c.min_token_length);
  read(j, "drop_numeric", c.drop_numeric);
  read(j, "window", c.window);
  read(j, "min_edge_weight", c.min_edge_weight);
  read(j, "export_graph", c.export_graph);
  read(j, "std_base", c.std_base);
  read(j, "pivots", c.pivots);
  if (j.contains("seed")) {
    if (j["seed"].is_null()) {
      c.seed.reset();
    } else {
      std::uint64_t seed = 0;
      read(j, "seed", seed);
      c.seed = seed;
    }
  }
  if (j.contains("betweenness")) {
    std::string b;
    read(j, "betweenness", b);
    set_betweenness(c, b);
  }
  read(j, "exact_node_cap", c.exact_node_cap);
  read(j, "distance", c.distance);
  read(j, "slice", c.slice);
  read(j, "lexicon", c.lexicon);
  read(j, "data", c.data);
  read(j, "models", c.models);
  read(j, "scores", c.scores);
  read(j, "join_column", c.join_column);
  read(j, "robust", c.robust);
  read(j, "focal", c.focal);
  read(j, "moderator", c.moderator);
  read(j, "grid", c.grid);
  read(j, "variables", c.variables);
  read(j, "tetrachoric", c.tetrachoric);
  read(j, "windows", c.windows);
  read(j, "threads", c.threads);
  read(j, "out", c.out);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw InputError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  RunConfig c;
  merge_json(c, j);
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["corpus"] = c.corpus;
  j["format"] = c.format;
  j["from"] = c.from;
  j["to"] = c.to;
  j["sources"] = c.sources;
  j["brands"] = c.brands;
  j["stopwords"] = c.stopwords;
  j["stemmer"] = c.stemmer;
  j["lowercase"] = c.lowercase;
  j["min_token_length"] = c.min_token_length;
  j["drop_numeric"] = c.drop_numeric;
  j["window"] = c.window;
  j["min_edge_weight"] = c.min_edge_weight;
  j["export_graph"] = c.export_graph;
  j["std_base"] = c.std_base;
  j["betweenness"] = c.betweenness;
  j["pivots"] = c.pivots;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["exact_node_cap"] = c.exact_node_cap;
  j["distance"] = c.distance;
  j["slice"] = c.slice;
  j["lexicon"] = c.lexicon;
  j["data"] = c.data;
  j["models"] = c.models;
  j["scores"] = c.scores;
  j["join_column"] = c.join_column;
  j["robust"] = c.robust;
  j["focal"] = c.focal;
  j["moderator"] = c.moderator;
  j["grid"] = c.grid;
  j["variables"] = c.variables;
  j["tetrachoric"] = c.tetrachoric;
  j["windows"] = c.windows;
  j["threads"] = c.threads;
  return j;
}

std::vector<std::pair<std::string, std::filesystem::path>> input_files(const RunConfig& c,
                                                                       Command command) {
  std::vector<std::pair<std::string, std::filesystem::path>> files;
  if (needs_corpus(c, command)) {
    files.emplace_back("corpus", c.corpus);
    files.emplace_back("brands", c.brands);
    if (c.stopwords != "default" && c.stopwords != "none") {
      files.emplace_back("stopwords", c.stopwords);
    }
    if (c.stemmer.starts_with(kRulesPrefix)) {
      files.emplace_back("stemmer_rules", c.stemmer.substr(kRulesPrefix.size()));
    }
    if (!c.lexicon.empty()) files.emplace_back("lexicon", c.lexicon);
  }
  if (command == Command::kRegress || command == Command::kMargins ||
      command == Command::kStats) {
    files.emplace_back("data", c.data);
  }
  if (command == Command::kRegress || command == Command::kMargins) {
    files.emplace_back("models", c.models);
    if (!c.scores.empty()) files.emplace_back("scores", c.scores);
  }
  return files;
}

void validate(const RunConfig& c, Command command) {
  parse_corpus_format(c.format);
  parse_population(c.std_base);
  require_one_of("betweenness", c.betweenness, {"auto", "exact", "approx"});
  require_one_of("distance", c.distance, {"reciprocal", "reciprocal_log1p"});
  require_one_of("slice", c.slice, {"none", "year", "month"});
  if (!c.stemmer.starts_with(kRulesPrefix) && c.stemmer != "none") parse_language(c.stemmer);
  stats::parse_covariance(c.robust);
  stats::parse_tetrachoric_mode(c.tetrachoric);
  if (c.window == 0) throw InputError("window must be at least 1");
  if (c.min_edge_weight == 0) throw InputError("min_edge_weight must be at least 1");
  if (c.min_token_length == 0) throw InputError("min_token_length must be at least 1");
  if (c.pivots == 0) throw InputError("pivots must be at least 1");
  if (c.betweenness == "approx" && !c.seed) {
    throw InputError("approximate betweenness requires a seed (approx:<k>,<seed> or --seed)");
  }
  std::optional<Date> from, to;
  if (!c.from.empty()) from = parse_date(c.from);
  if (!c.to.empty()) to = parse_date(c.to);
  if (from && to && *from > *to) throw InputError("--from " + c.from + " is after --to " + c.to);

  if (needs_corpus(c, command)) {
    if (c.corpus.empty()) throw InputError("no corpus given (--corpus)");
    if (c.brands.empty()) throw InputError("no brand spec given (--brands)");
  }
  if (command == Command::kRegress || command == Command::kMargins) {
    if (c.data.empty()) throw InputError("no firm data given (--data)");
    if (c.models.empty()) throw InputError("no model spec given (--models)");
  }
  if (command == Command::kMargins && (c.focal.empty() || c.moderator.empty())) {
    throw InputError("margins needs --focal and --moderator");
  }
  if (command == Command::kStats) {
    if (c.data.empty()) throw InputError("no data given (--data)");
    if (c.variables.empty()) throw InputError("no variables given (--variables)");
  }
  if (command == Command::kRobustness && c.windows.size() < 2) {
    throw InputError("robustness needs at least two windows");
  }
  for (auto w : c.windows) {
    if (w == 0) throw InputError("robustness windows must be at least 1");
  }
  for (const auto& [role, path] : input_files(c, command)) {
    if (!std::filesystem::is_regular_file(path)) {
      throw InputError(role + " file not found: " + path.string());
    }
  }
}

SbsConfig make_sbs_config(const RunConfig& c) {
  SbsConfig s;
  if (c.stopwords == "default") {
    s.pipeline.stopwords = default_english_stopwords();
  } else if (c.stopwords != "none") {
    s.pipeline.stopwords = load_stopwords(c.stopwords);
  }
  if (c.stemmer.starts_with(kRulesPrefix)) {
    s.pipeline.stemmer =
        Stemmer::from_rules(SuffixRuleSet::load(c.stemmer.substr(kRulesPrefix.size())));
  } else if (c.stemmer != "none") {
    s.pipeline.stemmer = Stemmer::for_language(parse_language(c.stemmer));
  }
  s.pipeline.lowercase = c.lowercase;
  s.pipeline.min_token_length = c.min_token_length;
  s.pipeline.drop_numeric = c.drop_numeric;
  s.window = c.window;
  s.min_edge_weight = c.min_edge_weight;
  s.population = parse_population(c.std_base);
  using Kind = BetweennessPolicy::Kind;
  s.betweenness.kind = c.betweenness == "exact"    ? Kind::kExact
                       : c.betweenness == "approx" ? Kind::kApproximate
                                                   : Kind::kAuto;
  s.betweenness.pivots = c.pivots;
  s.betweenness.exact_node_cap = c.exact_node_cap;
  s.betweenness.seed_given = c.seed.has_value();
  s.betweenness.seed = c.seed.value_or(0);
  s.distance = c.distance == "reciprocal_log1p" ? DistanceTransform::kReciprocalLog1p
                                                : DistanceTransform::kReciprocal;
  if (!c.lexicon.empty()) s.lexicon = load_lexicon(c.lexicon);
  s.threads = c.threads;
  s.keep_graph = c.export_graph;
  return s;
}

}  // namespace sbs::run
