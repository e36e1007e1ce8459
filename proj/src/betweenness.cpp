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

#include "sbs/betweenness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "sbs/error.hpp"
#include "sbs/parallel.hpp"

namespace sbs {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Path lengths are sums of reciprocals; equal lengths reached along different
// routes can differ in the last bits.
constexpr double kTieTolerance = 1e-12;

bool same_length(double x, double y) {
  return std::abs(x - y) <= kTieTolerance * std::max(x, y);
}

// Upper bound on the memory spent on per-chunk partial sums.
constexpr std::size_t kPartialBudgetBytes = std::size_t{256} << 20;

// Reusable single-source workspace.
class SingleSource {
 public:
  SingleSource(const CooccurrenceGraph& graph, DistanceTransform transform)
      : graph_(graph),
        transform_(transform),
        dist_(graph.node_count(), kInfinity),
        sigma_(graph.node_count(), 0.0),
        delta_(graph.node_count(), 0.0),
        settled_(graph.node_count(), false) {}

  // Adds the dependencies of source s to `acc`.
  void accumulate(std::uint32_t s, std::vector<double>& acc) {
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    order_.clear();
    touched_.clear();

    dist_[s] = 0.0;
    sigma_[s] = 1.0;
    touched_.push_back(s);
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (settled_[v] || d > dist_[v]) continue;
      settled_[v] = true;
      order_.push_back(v);
      for (const auto& nb : graph_.neighbors(v)) {
        const auto w = nb.node;
        if (settled_[w]) continue;
        const double alt = d + edge_distance(nb.weight, transform_);
        if (dist_[w] == kInfinity) {
          touched_.push_back(w);
          dist_[w] = alt;
          sigma_[w] = sigma_[v];
          heap.push({alt, w});
        } else if (same_length(alt, dist_[w])) {
          sigma_[w] += sigma_[v];
        } else if (alt < dist_[w]) {
          dist_[w] = alt;
          sigma_[w] = sigma_[v];
          heap.push({alt, w});
        }
      }
    }

    // Dependencies, in reverse order of distance. Predecessors are recovered
    // from the tight edges instead of being stored.
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const auto w = *it;
      const double coeff = (1.0 + delta_[w]) / sigma_[w];
      for (const auto& nb : graph_.neighbors(w)) {
        const auto v = nb.node;
        if (dist_[v] >= dist_[w]) continue;
        if (same_length(dist_[v] + edge_distance(nb.weight, transform_), dist_[w])) {
          delta_[v] += sigma_[v] * coeff;
        }
      }
      if (w != s) acc[w] += delta_[w];
    }

    for (auto v : touched_) {
      dist_[v] = kInfinity;
      sigma_[v] = 0.0;
      delta_[v] = 0.0;
      settled_[v] = false;
    }
  }

 private:
  const CooccurrenceGraph& graph_;
  DistanceTransform transform_;
  std::vector<double> dist_;
  std::vector<double> sigma_;
  std::vector<double> delta_;
  std::vector<bool> settled_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace

double edge_distance(std::uint64_t weight, DistanceTransform transform) {
  const double w = static_cast<double>(weight);
  return transform == DistanceTransform::kReciprocal ? 1.0 / w : 1.0 / std::log1p(w);
}

std::vector<std::uint32_t> sample_pivots(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) {
    throw InputError("pivot count " + std::to_string(k) + " must be in [1, " +
                     std::to_string(n) + "]");
  }
  std::mt19937_64 rng(seed);
  // Unbiased draw from [0, bound) by rejection.
  const auto uniform = [&rng](std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return x % bound;
  };
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::vector<double> weighted_betweenness(const CooccurrenceGraph& graph,
                                         const BetweennessOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  for (const auto& e : graph.edges()) {
    if (e.weight == 0) throw InputError("betweenness: non-positive edge weight");
  }

  std::vector<std::uint32_t> sources;
  double scale = 0.5;  // each unordered pair is seen from both ends
  if (options.mode.kind == BetweennessMode::Kind::kApproximate) {
    sources = sample_pivots(n, options.mode.pivots, options.mode.seed);
    scale *= static_cast<double>(n) / static_cast<double>(sources.size());
  } else {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0u);
  }

  // Sources are split into a fixed number of contiguous chunks whose partial
  // sums are added in chunk order, so the floating-point result is the same
  // for any thread count.
  const std::size_t budget_chunks = std::max<std::size_t>(1, kPartialBudgetBytes / (8 * n));
  const std::size_t chunks = std::min({sources.size(), std::size_t{256}, budget_chunks});
  std::vector<std::vector<double>> partial(chunks);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_threads(options.threads), chunks));
  std::atomic<std::size_t> next_chunk{0};
  parallel_for(workers, workers, [&](std::size_t) {
    SingleSource workspace(graph, options.distance);
    for (std::size_t c = next_chunk++; c < chunks; c = next_chunk++) {
      auto& acc = partial[c];
      acc.assign(n, 0.0);
      const std::size_t begin = c * sources.size() / chunks;
      const std::size_t end = (c + 1) * sources.size() / chunks;
      for (std::size_t i = begin; i < end; ++i) workspace.accumulate(sources[i], acc);
    }
  });

  std::vector<double> result(n, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) result[v] += acc[v];
  }
  for (auto& x : result) x *= scale;
  return result;
}

std::unordered_map<std::string, double> weighted_betweenness(
    const CooccurrenceGraph& graph, const std::vector<std::string>& tokens,
    const BetweennessOptions& options) {
  std::vector<std::uint32_t> ids;
  for (const auto& token : tokens) {
    const auto id = graph.find(token);
    if (!id) throw InputError("betweenness: `" + token + "` is not a graph node");
    ids.push_back(*id);
  }
  const auto all = weighted_betweenness(graph, options);
  std::unordered_map<std::string, double> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) out[tokens[i]] = all[ids[i]];
  return out;
}

}  // namespace sbs
