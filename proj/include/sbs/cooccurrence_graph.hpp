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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sbs/text_pipeline.hpp"

namespace sbs {

inline constexpr std::size_t kDefaultWindow = 5;
inline constexpr std::uint64_t kDefaultMinEdgeWeight = 2;

// Token <-> dense id mapping, ids assigned in order of first appearance.
class Vocabulary {
 public:
  std::uint32_t intern(std::string_view token);
  std::optional<std::uint32_t> find(std::string_view token) const;
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> words_;
};

// Token sequences with tokens replaced by vocabulary ids. This is the compact
// form the pipeline keeps in memory for large corpora.
struct EncodedCorpus {
  Vocabulary vocabulary;
  std::vector<std::string> doc_ids;
  std::vector<std::vector<std::uint32_t>> docs;

  void add(const TokenSequence& seq);
};

EncodedCorpus encode(std::span<const TokenSequence> seqs);

// Edge between node indices a < b. Node indices follow lexicographic token
// order, so a < b also means token(a) < token(b).
struct GraphEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint64_t weight = 0;

  bool operator==(const GraphEdge&) const = default;
};

struct Neighbor {
  std::uint32_t node = 0;
  std::uint64_t weight = 0;
};

// Undirected weighted word co-occurrence network. Immutable once built.
class CooccurrenceGraph {
 public:
  CooccurrenceGraph() = default;

  // Assembles a graph from named nodes and edges given as indices into
  // `nodes`. Nodes are reordered lexicographically; duplicate edges are summed.
  // Throws InputError on self-loops, zero weights, duplicate node names or
  // out-of-range indices.
  static CooccurrenceGraph from_parts(std::vector<std::string> nodes,
                                      std::vector<std::uint64_t> frequency,
                                      std::vector<GraphEdge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& token(std::uint32_t node) const { return nodes_[node]; }
  std::optional<std::uint32_t> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }

  // Total occurrences of the token in the token sequences.
  std::uint64_t frequency(std::uint32_t node) const { return frequency_[node]; }
  const std::vector<std::uint64_t>& frequencies() const { return frequency_; }

  // Number of distinct neighbours.
  std::size_t degree(std::uint32_t node) const {
    return offsets_[node + 1] - offsets_[node];
  }
  std::span<const Neighbor> neighbors(std::uint32_t node) const {
    return {adjacency_.data() + offsets_[node], degree(node)};
  }

  // Sorted by (a, b).
  const std::vector<GraphEdge>& edges() const { return edges_; }

  // 0 when the tokens are not connected.
  std::uint64_t weight(std::string_view a, std::string_view b) const;

  bool operator==(const CooccurrenceGraph& other) const {
    return nodes_ == other.nodes_ && frequency_ == other.frequency_ && edges_ == other.edges_;
  }

 private:
  void build_adjacency();

  std::vector<std::string> nodes_;
  std::vector<std::uint64_t> frequency_;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Counts, for every pair of positions 0 < j - i <= window inside one sequence,
// one co-occurrence of the unordered token pair; identical tokens are skipped.
// Every token that appears becomes a node. Throws InputError if window == 0.
CooccurrenceGraph build_graph(const EncodedCorpus& corpus, std::size_t window = kDefaultWindow,
                              unsigned threads = 1);
CooccurrenceGraph build_graph(std::span<const TokenSequence> seqs,
                              std::size_t window = kDefaultWindow, unsigned threads = 1);

// Drops edges lighter than min_edge_weight, then drops nodes that lost all
// their edges. Nodes that had no edges to begin with are kept, so a threshold
// of 1 is the identity. Throws InputError if min_edge_weight == 0.
CooccurrenceGraph filter_edges(const CooccurrenceGraph& graph, std::uint64_t min_edge_weight);

// Edgewise and nodewise sum.
CooccurrenceGraph merge_graphs(const CooccurrenceGraph& a, const CooccurrenceGraph& b);

struct QuantilePoint {
  double level = 0;
  std::uint64_t value = 0;
};

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t total_weight = 0;
  std::vector<QuantilePoint> weight_quantiles;
  std::vector<QuantilePoint> degree_quantiles;
};

inline constexpr double kStatLevels[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0};

// Nearest-rank quantiles at kStatLevels. All zeros for an empty graph.
GraphStats graph_stats(const CooccurrenceGraph& graph);
std::string graph_stats_json(const GraphStats& stats);

// Edge list with header "token_a,token_b,weight", and a JSON node table of
// {token, frequency, degree}.
void write_edge_list(const CooccurrenceGraph& graph, std::ostream& out);
void write_node_table(const CooccurrenceGraph& graph, std::ostream& out);
CooccurrenceGraph read_graph(std::istream& edge_list, std::istream* node_table = nullptr);

}  // namespace sbs
