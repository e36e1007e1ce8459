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
#include <string>
#include <unordered_map>
#include <vector>

#include "sbs/cooccurrence_graph.hpp"

namespace sbs {

// How co-occurrence weights become path lengths. Heavier ties are closer.
enum class DistanceTransform {
  kReciprocal,       // 1 / w
  kReciprocalLog1p,  // 1 / ln(1 + w)
};

double edge_distance(std::uint64_t weight, DistanceTransform transform);

struct BetweennessMode {
  enum class Kind { kExact, kApproximate };

  Kind kind = Kind::kExact;
  std::size_t pivots = 0;  // approximate only
  std::uint64_t seed = 0;  // approximate only

  static BetweennessMode exact() { return {}; }
  static BetweennessMode approximate(std::size_t pivots, std::uint64_t seed) {
    return {Kind::kApproximate, pivots, seed};
  }
};

struct BetweennessOptions {
  BetweennessMode mode;
  DistanceTransform distance = DistanceTransform::kReciprocal;
  unsigned threads = 1;
};

// Draws k distinct source nodes out of n, uniformly, with a portable
// generator: the same (n, k, seed) gives the same pivots on every platform.
std::vector<std::uint32_t> sample_pivots(std::size_t n, std::size_t k, std::uint64_t seed);

// Weighted betweenness of every node, indexed like graph.nodes(): the sum over
// unordered pairs {s, t} (s != v != t) of the share of shortest s-t paths
// through v. Approximate mode runs the single-source stage only from sampled
// pivots and scales by n / k. The result does not depend on `threads`.
// Throws InputError when pivots is 0 or exceeds the node count.
std::vector<double> weighted_betweenness(const CooccurrenceGraph& graph,
                                         const BetweennessOptions& options = {});

// Same, restricted to the named tokens. Throws InputError for unknown tokens.
std::unordered_map<std::string, double> weighted_betweenness(
    const CooccurrenceGraph& graph, const std::vector<std::string>& tokens,
    const BetweennessOptions& options = {});

}  // namespace sbs
