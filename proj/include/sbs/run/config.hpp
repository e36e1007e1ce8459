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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sbs/brand_metrics.hpp"

namespace sbs::run {

enum class Command { kCompute, kRegress, kMargins, kRobustness, kStats };
Command parse_command(std::string_view name);
std::string_view command_name(Command command);

// Every tunable of a run. Paths are kept as written; relative paths resolve
// against the working directory.
struct RunConfig {
  // corpus
  std::string corpus;
  std::string format = "jsonl";
  std::string from;  // YYYY-MM-DD, empty = unbounded
  std::string to;
  std::vector<std::string> sources;  // empty = all
  // text pipeline
  std::string brands;
  std::string stopwords = "default";  // "default", "none" or a path
  std::string stemmer = "english";    // "none", "english", "italian" or "rules:<path>"
  bool lowercase = true;
  std::size_t min_token_length = 2;
  bool drop_numeric = true;
  // graph
  std::size_t window = kDefaultWindow;
  std::uint64_t min_edge_weight = kDefaultMinEdgeWeight;
  bool export_graph = false;
  // metrics
  std::string std_base = "all_nodes";
  std::string betweenness = "auto";  // "auto", "exact" or "approx"
  std::size_t pivots = 500;
  std::optional<std::uint64_t> seed;
  std::size_t exact_node_cap = 20000;
  std::string distance = "reciprocal";  // or "reciprocal_log1p"
  std::string slice = "none";           // "none", "year" or "month"
  std::string lexicon;                  // empty = no sentiment lexicon
  // analysis
  std::string data;
  std::string models;
  std::string scores;  // precomputed scores.csv; else computed from the corpus
  std::string join_column = "brand";
  std::string robust = "hc1";
  std::string focal;
  std::string moderator;
  std::vector<double> grid;
  std::vector<std::string> variables;  // for `stats`
  std::string tetrachoric = "cosine_pi";
  // robustness
  std::vector<std::size_t> windows;
  // execution
  unsigned threads = 1;
  std::string out = "out";
};

// Applies "approx:<k>,<seed>" shorthand; plain "auto", "exact" and "approx"
// are stored as they are.
void set_betweenness(RunConfig& config, std::string_view value);

// Reads the keys present in `j` over `config`. Unknown keys are errors. A run
// manifest is accepted too: its "config" block is used.
void merge_json(RunConfig& config, const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

// All tunables except `out`, in a fixed key order.
nlohmann::json to_json(const RunConfig& config);

// Fails fast with InputError on bad enumerations, inconsistent settings
// (approximation without a seed, fewer than two robustness windows, ...) and
// missing input files needed by the command.
void validate(const RunConfig& config, Command command);

// Input files the command reads, keyed by role.
std::vector<std::pair<std::string, std::filesystem::path>> input_files(const RunConfig& config,
                                                                       Command command);

// Builds the scoring configuration, reading stopwords, stemmer rules and the
// lexicon from disk.
SbsConfig make_sbs_config(const RunConfig& config);

}  // namespace sbs::run
