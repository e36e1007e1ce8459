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

// Brute-force reference implementations shared by the unit tests and the
// acceptance binary. They favour obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sbs/cooccurrence_graph.hpp"
#include "sbs/text_pipeline.hpp"

namespace sbs::oracle {

using EdgeMap = std::map<std::pair<std::string, std::string>, std::uint64_t>;

// Double loop over positions.
inline EdgeMap naive_edges(const std::vector<TokenSequence>& seqs, std::size_t window) {
  EdgeMap edges;
  for (const auto& seq : seqs) {
    const auto& t = seq.tokens;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size() && j - i <= window; ++j) {
        if (t[i] == t[j]) continue;
        ++edges[std::minmax(t[i], t[j])];
      }
    }
  }
  return edges;
}

inline std::map<std::string, std::uint64_t> naive_frequency(const std::vector<TokenSequence>& seqs) {
  std::map<std::string, std::uint64_t> freq;
  for (const auto& seq : seqs)
    for (const auto& tok : seq.tokens) ++freq[tok];
  return freq;
}

inline EdgeMap edge_map(const CooccurrenceGraph& g) {
  EdgeMap edges;
  for (const auto& e : g.edges()) edges[{g.token(e.a), g.token(e.b)}] = e.weight;
  return edges;
}

inline std::vector<TokenSequence> random_corpus(std::mt19937_64& rng, std::size_t max_docs,
                                                std::size_t max_tokens, std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> docs(0, max_docs), len(0, max_tokens),
      word(0, vocab - 1);
  std::vector<TokenSequence> seqs(docs(rng));
  for (std::size_t d = 0; d < seqs.size(); ++d) {
    seqs[d].doc_id = "d" + std::to_string(d);
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) seqs[d].tokens.push_back("w" + std::to_string(word(rng)));
  }
  return seqs;
}

// Random connected-ish graph on n nodes with integer weights in [1, max_weight].
inline CooccurrenceGraph random_graph(std::mt19937_64& rng, std::size_t n, double density,
                                      std::uint64_t max_weight) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::uint64_t> weight(1, max_weight);
  std::vector<GraphEdge> edges;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (keep(rng)) edges.push_back({a, b, weight(rng)});
  return CooccurrenceGraph::from_parts(names, std::vector<std::uint64_t>(n, 1), edges);
}

// Betweenness by explicit path enumeration. Edge lengths are 1/w scaled by
// `scale` and rounded, so pass a scale that makes every 1/w an integer
// (60 covers weights 1..6); distances are then compared exactly.
inline std::vector<double> enumerated_betweenness(const CooccurrenceGraph& g, std::int64_t scale) {
  const std::size_t n = g.node_count();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> len(n, std::vector<std::int64_t>(n, kInf));
  for (const auto& e : g.edges()) {
    const auto l = static_cast<std::int64_t>(std::llround(double(scale) / double(e.weight)));
    len[e.a][e.b] = len[e.b][e.a] = l;
  }
  // Floyd-Warshall for the target lengths.
  auto dist = len;
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] < kInf && dist[k][j] < kInf)
          dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dist[s][t] >= kInf) continue;
      // Every simple path from s with length exactly dist[s][t] ending in t.
      std::vector<std::uint64_t> through(n, 0);
      std::uint64_t total = 0;
      std::vector<std::size_t> path{s};
      std::vector<bool> on_path(n, false);
      on_path[s] = true;
      std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t u, std::int64_t d) {
        if (u == t) {
          if (d == dist[s][t]) {
            ++total;
            for (std::size_t k = 1; k + 1 < path.size(); ++k) ++through[path[k]];
          }
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (len[u][v] >= kInf || on_path[v] || d + len[u][v] > dist[s][t]) continue;
          on_path[v] = true;
          path.push_back(v);
          walk(v, d + len[u][v]);
          path.pop_back();
          on_path[v] = false;
        }
      };
      walk(s, 0);
      for (std::size_t v = 0; v < n; ++v)
        if (through[v]) bc[v] += double(through[v]) / double(total);
    }
  }
  return bc;
}

// Direct double loop over the defining sum.
inline double distinctiveness_formula(const CooccurrenceGraph& g, std::uint32_t v) {
  const double n = double(g.node_count());
  std::vector<std::size_t> degree(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    ++degree[e.a];
    ++degree[e.b];
  }
  double sum = 0;
  for (const auto& e : g.edges()) {
    if (e.a != v && e.b != v) continue;
    const std::uint32_t j = e.a == v ? e.b : e.a;
    sum += double(e.weight) * std::log10((n - 1) / double(degree[j]));
  }
  return sum;
}

}  // namespace sbs::oracle
