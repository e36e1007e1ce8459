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

#include "sbs/cooccurrence_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "absl/container/flat_hash_map.h"
#include "json.hpp"
#include "sbs/csv.hpp"
#include "sbs/error.hpp"
#include "sbs/parallel.hpp"

namespace sbs {
namespace {

std::uint64_t pair_key(std::uint32_t x, std::uint32_t y) {
  const auto lo = std::min(x, y);
  const auto hi = std::max(x, y);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

std::size_t partition_of(std::uint64_t key, std::size_t partitions) {
  return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 40) % partitions;
}

std::uint64_t nearest_rank(const std::vector<std::uint64_t>& sorted, double level) {
  if (sorted.empty()) return 0;
  auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace

std::uint32_t Vocabulary::intern(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(words_.size());
  words_.emplace_back(token);
  ids_.emplace(words_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void EncodedCorpus::add(const TokenSequence& seq) {
  doc_ids.push_back(seq.doc_id);
  auto& ids = docs.emplace_back();
  ids.reserve(seq.tokens.size());
  for (const auto& token : seq.tokens) ids.push_back(vocabulary.intern(token));
}

EncodedCorpus encode(std::span<const TokenSequence> seqs) {
  EncodedCorpus corpus;
  for (const auto& seq : seqs) corpus.add(seq);
  return corpus;
}

CooccurrenceGraph CooccurrenceGraph::from_parts(std::vector<std::string> nodes,
                                                std::vector<std::uint64_t> frequency,
                                                std::vector<GraphEdge> edges) {
  const std::size_t n = nodes.size();
  if (frequency.size() != n) throw InputError("graph: frequency table size mismatch");

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return nodes[x] < nodes[y]; });
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t r = 0; r < n; ++r) rank[order[r]] = r;

  CooccurrenceGraph g;
  g.nodes_.reserve(n);
  g.frequency_.reserve(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    g.nodes_.push_back(std::move(nodes[order[r]]));
    g.frequency_.push_back(frequency[order[r]]);
    if (r > 0 && g.nodes_[r] == g.nodes_[r - 1]) {
      throw InputError("graph: duplicate node `" + g.nodes_[r] + "`");
    }
  }

  for (auto& e : edges) {
    if (e.a >= n || e.b >= n) throw InputError("graph: edge references unknown node");
    if (e.a == e.b) throw InputError("graph: self-loop on `" + g.nodes_[rank[e.a]] + "`");
    if (e.weight == 0) throw InputError("graph: edge with non-positive weight");
    const auto x = rank[e.a];
    const auto y = rank[e.b];
    e.a = std::min(x, y);
    e.b = std::max(x, y);
  }
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (out > 0 && edges[out - 1].a == edges[i].a && edges[out - 1].b == edges[i].b) {
      edges[out - 1].weight += edges[i].weight;
    } else {
      edges[out++] = edges[i];
    }
  }
  edges.resize(out);
  edges.shrink_to_fit();
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void CooccurrenceGraph::build_adjacency() {
  const std::size_t n = nodes_.size();
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.assign(offsets_[n], Neighbor{});
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (a, b), so every adjacency list ends up sorted by node.
  for (const auto& e : edges_) adjacency_[fill[e.b]++] = {e.a, e.weight};
  for (const auto& e : edges_) adjacency_[fill[e.a]++] = {e.b, e.weight};
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }
  index_.clear();
  index_.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) index_.emplace(nodes_[v], v);
}

std::optional<std::uint32_t> CooccurrenceGraph::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t CooccurrenceGraph::weight(std::string_view a, std::string_view b) const {
  const auto x = find(a);
  const auto y = find(b);
  if (!x || !y) return 0;
  const auto list = neighbors(*x);
  auto it = std::lower_bound(list.begin(), list.end(), *y,
                             [](const Neighbor& nb, std::uint32_t v) { return nb.node < v; });
  return (it != list.end() && it->node == *y) ? it->weight : 0;
}

CooccurrenceGraph build_graph(const EncodedCorpus& corpus, std::size_t window, unsigned threads) {
  if (window == 0) throw InputError("co-occurrence window must be at least 1");
  const std::size_t vocab = corpus.vocabulary.size();
  std::vector<std::uint64_t> frequency(vocab, 0);
  for (const auto& doc : corpus.docs) {
    for (auto id : doc) ++frequency[id];
  }

  // Workers own disjoint slices of the key space, so no merge step is needed
  // and peak memory stays at one copy of the counts.
  const std::size_t partitions = resolve_threads(threads);
  std::vector<std::vector<GraphEdge>> parts(partitions);
  parallel_for(partitions, threads, [&](std::size_t part) {
    absl::flat_hash_map<std::uint64_t, std::uint64_t> counts;
    for (const auto& doc : corpus.docs) {
      const std::size_t len = doc.size();
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t stop = std::min(len, i + window + 1);
        for (std::size_t j = i + 1; j < stop; ++j) {
          if (doc[i] == doc[j]) continue;
          const auto key = pair_key(doc[i], doc[j]);
          if (partitions > 1 && partition_of(key, partitions) != part) continue;
          ++counts[key];
        }
      }
    }
    auto& out = parts[part];
    out.reserve(counts.size());
    for (const auto& [key, count] : counts) {
      out.push_back({static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(key & 0xFFFFFFFFu), count});
    }
  });

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<GraphEdge> edges;
  edges.reserve(total);
  for (auto& p : parts) {
    edges.insert(edges.end(), p.begin(), p.end());
    std::vector<GraphEdge>().swap(p);
  }
  return CooccurrenceGraph::from_parts(corpus.vocabulary.words(), std::move(frequency),
                                       std::move(edges));
}

CooccurrenceGraph build_graph(std::span<const TokenSequence> seqs, std::size_t window,
                              unsigned threads) {
  return build_graph(encode(seqs), window, threads);
}

CooccurrenceGraph filter_edges(const CooccurrenceGraph& graph, std::uint64_t min_edge_weight) {
  if (min_edge_weight == 0) throw InputError("min_edge_weight must be at least 1");
  const std::size_t n = graph.node_count();
  std::vector<bool> had_edge(n, false);
  std::vector<bool> keeps_edge(n, false);
  for (const auto& e : graph.edges()) {
    had_edge[e.a] = had_edge[e.b] = true;
    if (e.weight >= min_edge_weight) keeps_edge[e.a] = keeps_edge[e.b] = true;
  }
  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  std::vector<std::string> nodes;
  std::vector<std::uint64_t> frequency;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (had_edge[v] && !keeps_edge[v]) continue;
    remap[v] = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(graph.token(v));
    frequency.push_back(graph.frequency(v));
  }
  std::vector<GraphEdge> edges;
  for (const auto& e : graph.edges()) {
    if (e.weight >= min_edge_weight) edges.push_back({remap[e.a], remap[e.b], e.weight});
  }
  return CooccurrenceGraph::from_parts(std::move(nodes), std::move(frequency), std::move(edges));
}

CooccurrenceGraph merge_graphs(const CooccurrenceGraph& a, const CooccurrenceGraph& b) {
  Vocabulary vocab;
  std::vector<std::uint64_t> frequency;
  std::vector<GraphEdge> edges;
  for (const auto* g : {&a, &b}) {
    std::vector<std::uint32_t> ids(g->node_count());
    for (std::uint32_t v = 0; v < g->node_count(); ++v) {
      ids[v] = vocab.intern(g->token(v));
      if (ids[v] == frequency.size()) frequency.push_back(0);
      frequency[ids[v]] += g->frequency(v);
    }
    for (const auto& e : g->edges()) edges.push_back({ids[e.a], ids[e.b], e.weight});
  }
  return CooccurrenceGraph::from_parts(vocab.words(), std::move(frequency), std::move(edges));
}

GraphStats graph_stats(const CooccurrenceGraph& graph) {
  GraphStats stats;
  stats.nodes = graph.node_count();
  stats.edges = graph.edge_count();
  std::vector<std::uint64_t> weights;
  weights.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    weights.push_back(e.weight);
    stats.total_weight += e.weight;
  }
  std::vector<std::uint64_t> degrees;
  degrees.reserve(graph.node_count());
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) degrees.push_back(graph.degree(v));
  std::sort(weights.begin(), weights.end());
  std::sort(degrees.begin(), degrees.end());
  for (double level : kStatLevels) {
    stats.weight_quantiles.push_back({level, nearest_rank(weights, level)});
    stats.degree_quantiles.push_back({level, nearest_rank(degrees, level)});
  }
  return stats;
}

std::string graph_stats_json(const GraphStats& stats) {
  using nlohmann::ordered_json;
  const auto quantiles = [](const std::vector<QuantilePoint>& points) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : points) arr.push_back({{"level", p.level}, {"value", p.value}});
    return arr;
  };
  ordered_json doc;
  doc["nodes"] = stats.nodes;
  doc["edges"] = stats.edges;
  doc["total_weight"] = stats.total_weight;
  doc["weight_quantiles"] = quantiles(stats.weight_quantiles);
  doc["degree_quantiles"] = quantiles(stats.degree_quantiles);
  return doc.dump(2);
}

void write_edge_list(const CooccurrenceGraph& graph, std::ostream& out) {
  out << "token_a,token_b,weight\n";
  for (const auto& e : graph.edges()) {
    csv::write_row(out, {graph.token(e.a), graph.token(e.b), std::to_string(e.weight)});
  }
}

void write_node_table(const CooccurrenceGraph& graph, std::ostream& out) {
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    table.push_back(
        {{"token", graph.token(v)}, {"frequency", graph.frequency(v)}, {"degree", graph.degree(v)}});
  }
  out << table.dump(2) << '\n';
}

CooccurrenceGraph read_graph(std::istream& edge_list, std::istream* node_table) {
  Vocabulary vocab;
  std::vector<std::uint64_t> frequency;
  const auto node = [&](const std::string& token) {
    const auto id = vocab.intern(token);
    if (id == frequency.size()) frequency.push_back(0);
    return id;
  };
  if (node_table) {
    nlohmann::json table;
    try {
      table = nlohmann::json::parse(*node_table);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("node table: ") + e.what());
    }
    if (!table.is_array()) throw InputError("node table must be a JSON array");
    for (const auto& row : table) {
      if (!row.is_object() || !row.contains("token") || !row["token"].is_string()) {
        throw InputError("node table entries need a string `token`");
      }
      const auto id = node(row["token"].get<std::string>());
      if (row.contains("frequency")) frequency[id] = row["frequency"].get<std::uint64_t>();
    }
  }
  csv::Reader reader(edge_list);
  csv::Record rec;
  std::vector<GraphEdge> edges;
  bool header = true;
  while (reader.next(rec)) {
    if (header) {
      header = false;
      if (rec.fields.size() == 3 && rec.fields[0] == "token_a") continue;
    }
    if (rec.fields.size() != 3) {
      throw InputError("edge list line " + std::to_string(rec.line) + ": expected 3 fields");
    }
    std::uint64_t w = 0;
    try {
      std::size_t used = 0;
      w = std::stoull(rec.fields[2], &used);
      if (used != rec.fields[2].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError("edge list line " + std::to_string(rec.line) + ": bad weight");
    }
    edges.push_back({node(rec.fields[0]), node(rec.fields[1]), w});
  }
  return CooccurrenceGraph::from_parts(vocab.words(), std::move(frequency), std::move(edges));
}

}  // namespace sbs
