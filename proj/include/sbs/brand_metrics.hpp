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
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sbs/betweenness.hpp"
#include "sbs/cooccurrence_graph.hpp"
#include "sbs/corpus.hpp"
#include "sbs/text_pipeline.hpp"

namespace sbs {

// Total occurrences of `brand` across the sequences.
std::uint64_t prevalence(std::span<const TokenSequence> seqs, std::string_view brand);

// Distinctiveness centrality of a node:
//
//   D(v) = sum over neighbours j of w(v, j) * log10((n - 1) / g_j)
//
// where n is the node count and g_j the number of distinct neighbours of j.
// Links to words that are themselves linked to few others weigh more; a
// neighbour linked to every other node contributes nothing. Throws InputError
// when the node is absent or the graph has fewer than two nodes.
double distinctiveness(const CooccurrenceGraph& graph, std::string_view node);

// D(v) for every node, indexed like graph.nodes().
std::vector<double> distinctiveness_all(const CooccurrenceGraph& graph);

struct RawMeasures {
  double prevalence = 0;
  double diversity = 0;
  double connectivity = 0;
};

enum class StandardizationPopulation { kAllNodes, kBrandsOnly };

StandardizationPopulation parse_population(std::string_view name);
std::string_view population_name(StandardizationPopulation population);

struct Moments {
  double mean = 0;
  double sd = 0;  // population standard deviation
};

// Reference population for the z-scores of the three measures.
struct StandardizationBase {
  StandardizationPopulation population = StandardizationPopulation::kAllNodes;
  std::size_t size = 0;
  Moments prevalence;
  Moments diversity;
  Moments connectivity;
};

// Throws ComputeError if any measure has zero variance over the population.
StandardizationBase make_base(std::span<const RawMeasures> population,
                              StandardizationPopulation kind);

struct StandardizedMeasures {
  double prevalence_z = 0;
  double diversity_z = 0;
  double connectivity_z = 0;
  double sbs = 0;  // sum of the three z-values
};

StandardizedMeasures standardize(const RawMeasures& raw, const StandardizationBase& base);

// token -> polarity in [-1, 1]
using Lexicon = std::unordered_map<std::string, double>;

// Throws InputError for a polarity outside [-1, 1] or a non-finite one.
void validate_lexicon(const Lexicon& lexicon);

// CSV "token,polarity"; a header row is optional.
Lexicon parse_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);

// Runs every lexicon entry through the text pipeline so that it matches the
// token stream. Entries that normalize to nothing are dropped; entries that
// collapse onto one token are averaged.
Lexicon normalize_lexicon(const Lexicon& lexicon, const PipelineConfig& config);

// Co-occurrence weighted mean polarity of the scored tokens found within
// `window` positions of the brand, counted like graph edges (one per position
// pair). 0 when nothing scored co-occurs. Throws InputError if window == 0 or
// the lexicon is out of range.
double brand_sentiment(std::span<const TokenSequence> seqs, std::string_view brand,
                       const Lexicon& lexicon, std::size_t window);

struct BrandScore {
  std::string brand;
  std::uint64_t prevalence_raw = 0;
  double diversity_raw = 0;
  double connectivity_raw = 0;
  double prevalence_z = 0;
  double diversity_z = 0;
  double connectivity_z = 0;
  double sbs = 0;
  double sentiment = 0;
  bool in_graph = false;  // false when edge filtering removed the brand node

  bool operator==(const BrandScore&) const = default;
};

// How betweenness is computed inside compute_sbs.
struct BetweennessPolicy {
  enum class Kind { kAuto, kExact, kApproximate };

  Kind kind = Kind::kAuto;
  std::size_t exact_node_cap = 20000;  // kAuto switches to pivots above this
  std::size_t pivots = 500;
  std::uint64_t seed = 0;
  bool seed_given = false;  // approximation needs an explicit seed
};

struct SbsConfig {
  PipelineConfig pipeline;  // protected tokens are filled from the brands
  std::size_t window = kDefaultWindow;
  std::uint64_t min_edge_weight = kDefaultMinEdgeWeight;
  StandardizationPopulation population = StandardizationPopulation::kAllNodes;
  BetweennessPolicy betweenness;
  DistanceTransform distance = DistanceTransform::kReciprocal;
  Lexicon lexicon;  // raw lexicon, normalized internally
  unsigned threads = 1;
  bool keep_graph = false;  // return the filtered graph in SbsResult::graph
};

struct SbsResult {
  std::vector<BrandScore> scores;  // in brand spec order
  StandardizationBase base;
  GraphStats full_graph;
  GraphStats filtered_graph;
  BetweennessMode betweenness;  // the mode actually used
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::vector<std::string> warnings;
  std::optional<CooccurrenceGraph> graph;  // filtered graph, when requested
};

// The whole scoring pipeline: brand collapsing, preprocessing, graph
// construction, edge filtering, the three measures, standardization and
// sentiment. Deterministic for a given configuration, independent of the
// thread count.
SbsResult compute_sbs(const Corpus& corpus, const std::vector<BrandSpec>& brands,
                      const SbsConfig& config);

enum class Period { kYear, kMonth };

Period parse_period(std::string_view name);

// Re-runs the pipeline on each calendar slice ("YYYY" or "YYYY-MM"). Scores of
// different slices are standardized against different populations.
std::vector<std::pair<std::string, SbsResult>> compute_sbs_by_period(
    const Corpus& corpus, const std::vector<BrandSpec>& brands, const SbsConfig& config,
    Period period);

}  // namespace sbs
