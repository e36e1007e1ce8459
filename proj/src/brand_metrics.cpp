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

#include "sbs/brand_metrics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>

#include "sbs/csv.hpp"
#include "sbs/error.hpp"
#include "sbs/parallel.hpp"

namespace sbs {
namespace {

Moments moments_of(std::span<const RawMeasures> population, double RawMeasures::*field) {
  Moments m;
  const double n = static_cast<double>(population.size());
  for (const auto& r : population) m.mean += r.*field;
  m.mean /= n;
  double ss = 0;
  for (const auto& r : population) {
    const double d = r.*field - m.mean;
    ss += d * d;
  }
  m.sd = std::sqrt(ss / n);
  return m;
}

double sentiment_over(const std::vector<std::vector<std::uint32_t>>& docs, std::uint32_t brand,
                      const std::vector<double>& polarity, std::size_t window) {
  double sum = 0;
  std::uint64_t count = 0;
  for (const auto& doc : docs) {
    const std::size_t len = doc.size();
    for (std::size_t i = 0; i < len; ++i) {
      if (doc[i] != brand) continue;
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(len, i + window + 1);
      for (std::size_t j = lo; j < hi; ++j) {
        if (doc[j] == brand) continue;
        const double p = polarity[doc[j]];
        if (std::isnan(p)) continue;
        sum += p;
        ++count;
      }
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<double> polarity_table(const Vocabulary& vocabulary, const Lexicon& lexicon) {
  std::vector<double> polarity(vocabulary.size(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [token, value] : lexicon) {
    if (auto id = vocabulary.find(token)) polarity[*id] = value;
  }
  return polarity;
}

BetweennessMode resolve_betweenness(const BetweennessPolicy& policy, std::size_t nodes) {
  using Kind = BetweennessPolicy::Kind;
  const auto approximate = [&](std::size_t pivots) {
    if (!policy.seed_given) {
      throw InputError("approximate betweenness requires an explicit seed");
    }
    return BetweennessMode::approximate(pivots, policy.seed);
  };
  switch (policy.kind) {
    case Kind::kExact:
      return BetweennessMode::exact();
    case Kind::kApproximate:
      return approximate(policy.pivots);
    case Kind::kAuto:
      if (nodes <= policy.exact_node_cap) return BetweennessMode::exact();
      return approximate(std::min(policy.pivots, nodes));
  }
  return BetweennessMode::exact();
}

std::string period_of(const Date& date, Period period) {
  char buf[16];
  if (period == Period::kYear) {
    std::snprintf(buf, sizeof(buf), "%04d", static_cast<int>(date.year()));
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()));
  }
  return buf;
}

}  // namespace

std::uint64_t prevalence(std::span<const TokenSequence> seqs, std::string_view brand) {
  std::uint64_t count = 0;
  for (const auto& seq : seqs) {
    for (const auto& token : seq.tokens) count += token == brand;
  }
  return count;
}

double distinctiveness(const CooccurrenceGraph& graph, std::string_view node) {
  if (graph.node_count() < 2) {
    throw InputError("distinctiveness needs a graph with at least two nodes");
  }
  const auto v = graph.find(node);
  if (!v) throw InputError("distinctiveness: `" + std::string(node) + "` is not a graph node");
  const double others = static_cast<double>(graph.node_count() - 1);
  double sum = 0;
  for (const auto& nb : graph.neighbors(*v)) {
    sum += static_cast<double>(nb.weight) *
           std::log10(others / static_cast<double>(graph.degree(nb.node)));
  }
  return sum;
}

std::vector<double> distinctiveness_all(const CooccurrenceGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw InputError("distinctiveness needs a graph with at least two nodes");
  const double others = static_cast<double>(n - 1);
  std::vector<double> rarity(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto g = graph.degree(j);
    rarity[j] = g == 0 ? 0.0 : std::log10(others / static_cast<double>(g));
  }
  std::vector<double> out(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    double sum = 0;
    for (const auto& nb : graph.neighbors(v)) sum += static_cast<double>(nb.weight) * rarity[nb.node];
    out[v] = sum;
  }
  return out;
}

StandardizationPopulation parse_population(std::string_view name) {
  if (name == "all_nodes") return StandardizationPopulation::kAllNodes;
  if (name == "brands_only") return StandardizationPopulation::kBrandsOnly;
  throw InputError("unknown standardization base `" + std::string(name) +
                   "` (expected all_nodes or brands_only)");
}

std::string_view population_name(StandardizationPopulation population) {
  return population == StandardizationPopulation::kAllNodes ? "all_nodes" : "brands_only";
}

StandardizationBase make_base(std::span<const RawMeasures> population,
                              StandardizationPopulation kind) {
  if (population.empty()) throw ComputeError("standardization population is empty");
  StandardizationBase base;
  base.population = kind;
  base.size = population.size();
  base.prevalence = moments_of(population, &RawMeasures::prevalence);
  base.diversity = moments_of(population, &RawMeasures::diversity);
  base.connectivity = moments_of(population, &RawMeasures::connectivity);
  const std::pair<const char*, const Moments*> checks[] = {
      {"prevalence", &base.prevalence},
      {"diversity", &base.diversity},
      {"connectivity", &base.connectivity}};
  for (const auto& [name, m] : checks) {
    if (!(m->sd > 0)) {
      throw ComputeError(std::string("zero variance in ") + name + " over the " +
                         std::string(population_name(kind)) + " population (" +
                         std::to_string(population.size()) + " members)");
    }
  }
  return base;
}

StandardizedMeasures standardize(const RawMeasures& raw, const StandardizationBase& base) {
  StandardizedMeasures z;
  z.prevalence_z = (raw.prevalence - base.prevalence.mean) / base.prevalence.sd;
  z.diversity_z = (raw.diversity - base.diversity.mean) / base.diversity.sd;
  z.connectivity_z = (raw.connectivity - base.connectivity.mean) / base.connectivity.sd;
  z.sbs = z.prevalence_z + z.diversity_z + z.connectivity_z;
  return z;
}

void validate_lexicon(const Lexicon& lexicon) {
  for (const auto& [token, value] : lexicon) {
    if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
      throw InputError("lexicon polarity for `" + token + "` is outside [-1, 1]");
    }
  }
}

Lexicon parse_lexicon(std::istream& in) {
  Lexicon lexicon;
  csv::Reader reader(in);
  csv::Record rec;
  bool first = true;
  while (reader.next(rec)) {
    if (rec.fields.size() != 2) {
      throw InputError("lexicon line " + std::to_string(rec.line) + ": expected token,polarity");
    }
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(rec.fields[1], &used);
      if (used != rec.fields[1].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw InputError("lexicon line " + std::to_string(rec.line) + ": bad polarity `" +
                       rec.fields[1] + "`");
    }
    first = false;
    lexicon[rec.fields[0]] = value;
  }
  validate_lexicon(lexicon);
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read sentiment lexicon " + path.string());
  return parse_lexicon(in);
}

Lexicon normalize_lexicon(const Lexicon& lexicon, const PipelineConfig& config) {
  validate_lexicon(lexicon);
  // Sorted iteration keeps the floating-point averages reproducible.
  std::map<std::string, double> ordered(lexicon.begin(), lexicon.end());
  std::map<std::string, std::pair<double, int>> sums;
  Preprocessor pre(config);
  for (const auto& [token, value] : ordered) {
    const auto seq = pre.run(token);
    if (seq.tokens.size() != 1) continue;
    auto& slot = sums[seq.tokens.front()];
    slot.first += value;
    ++slot.second;
  }
  Lexicon out;
  for (const auto& [token, sum] : sums) out[token] = sum.first / sum.second;
  return out;
}

double brand_sentiment(std::span<const TokenSequence> seqs, std::string_view brand,
                       const Lexicon& lexicon, std::size_t window) {
  if (window == 0) throw InputError("sentiment window must be at least 1");
  validate_lexicon(lexicon);
  const EncodedCorpus encoded = encode(seqs);
  const auto id = encoded.vocabulary.find(brand);
  if (!id) return 0.0;
  return sentiment_over(encoded.docs, *id, polarity_table(encoded.vocabulary, lexicon), window);
}

SbsResult compute_sbs(const Corpus& corpus, const std::vector<BrandSpec>& brands,
                      const SbsConfig& config) {
  if (brands.empty()) throw InputError("no brands specified");
  if (config.window == 0) throw InputError("co-occurrence window must be at least 1");
  if (config.min_edge_weight == 0) throw InputError("min_edge_weight must be at least 1");
  validate_brand_specs(brands);
  validate_lexicon(config.lexicon);

  SbsResult result;
  PipelineConfig pipeline = config.pipeline;
  for (const auto& brand : brands) pipeline.protected_tokens.insert(brand.canonical);
  const BrandMatcher matcher(brands);

  // Preprocess in batches so that only one batch of string tokens is alive at
  // a time; the corpus is kept as vocabulary ids.
  const unsigned workers = resolve_threads(config.threads);
  std::vector<std::unique_ptr<Preprocessor>> preprocessors;
  for (unsigned w = 0; w < workers; ++w) {
    preprocessors.push_back(std::make_unique<Preprocessor>(pipeline));
  }
  EncodedCorpus encoded;
  constexpr std::size_t kBatch = 4096;
  const auto& docs = corpus.documents();
  std::vector<TokenSequence> batch(kBatch);
  for (std::size_t start = 0; start < docs.size(); start += kBatch) {
    const std::size_t count = std::min(kBatch, docs.size() - start);
    std::atomic<std::size_t> next{0};
    parallel_for(workers, workers, [&](std::size_t w) {
      for (std::size_t i = next++; i < count; i = next++) {
        const Document& doc = docs[start + i];
        batch[i].doc_id = doc.id;
        batch[i].tokens.clear();
        preprocessors[w]->append_tokens(matcher.collapse(doc.text), batch[i].tokens);
      }
    });
    for (std::size_t i = 0; i < count; ++i) {
      result.tokens += batch[i].tokens.size();
      encoded.add(batch[i]);
      batch[i] = TokenSequence{};
    }
  }
  result.documents = docs.size();
  preprocessors.clear();

  const CooccurrenceGraph full = build_graph(encoded, config.window, config.threads);
  result.full_graph = graph_stats(full);
  const CooccurrenceGraph graph = filter_edges(full, config.min_edge_weight);
  result.filtered_graph = graph_stats(graph);
  if (graph.node_count() < 2) {
    throw ComputeError("the filtered co-occurrence graph has " +
                       std::to_string(graph.node_count()) + " node(s); at least two are needed");
  }

  const auto diversity = distinctiveness_all(graph);
  result.betweenness = resolve_betweenness(config.betweenness, graph.node_count());
  const auto connectivity = weighted_betweenness(
      graph, BetweennessOptions{result.betweenness, config.distance, config.threads});

  std::vector<RawMeasures> brand_raw(brands.size());
  for (std::size_t b = 0; b < brands.size(); ++b) {
    const auto& canonical = brands[b].canonical;
    BrandScore score;
    score.brand = canonical;
    if (auto id = encoded.vocabulary.find(canonical)) {
      score.prevalence_raw = full.frequency(*full.find(canonical));
    }
    if (auto node = graph.find(canonical)) {
      score.in_graph = true;
      score.diversity_raw = diversity[*node];
      score.connectivity_raw = connectivity[*node];
    } else {
      result.warnings.push_back("brand `" + canonical +
                                "` is not in the filtered graph; diversity and connectivity "
                                "set to 0");
    }
    brand_raw[b] = {static_cast<double>(score.prevalence_raw), score.diversity_raw,
                    score.connectivity_raw};
    result.scores.push_back(std::move(score));
  }

  if (config.population == StandardizationPopulation::kAllNodes) {
    std::vector<RawMeasures> nodes(graph.node_count());
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
      nodes[v] = {static_cast<double>(graph.frequency(v)), diversity[v], connectivity[v]};
    }
    result.base = make_base(nodes, config.population);
  } else {
    result.base = make_base(brand_raw, config.population);
  }

  const Lexicon lexicon = normalize_lexicon(config.lexicon, pipeline);
  const auto polarity = polarity_table(encoded.vocabulary, lexicon);
  for (std::size_t b = 0; b < brands.size(); ++b) {
    auto& score = result.scores[b];
    const auto z = standardize(brand_raw[b], result.base);
    score.prevalence_z = z.prevalence_z;
    score.diversity_z = z.diversity_z;
    score.connectivity_z = z.connectivity_z;
    score.sbs = z.sbs;
    if (auto id = encoded.vocabulary.find(score.brand)) {
      score.sentiment = sentiment_over(encoded.docs, *id, polarity, config.window);
    }
  }
  if (config.keep_graph) result.graph = graph;
  return result;
}

Period parse_period(std::string_view name) {
  if (name == "year") return Period::kYear;
  if (name == "month") return Period::kMonth;
  throw InputError("unknown period `" + std::string(name) + "` (expected year or month)");
}

std::vector<std::pair<std::string, SbsResult>> compute_sbs_by_period(
    const Corpus& corpus, const std::vector<BrandSpec>& brands, const SbsConfig& config,
    Period period) {
  std::map<std::string, std::vector<Document>> slices;
  for (const auto& doc : corpus) slices[period_of(doc.date, period)].push_back(doc);
  std::vector<std::pair<std::string, SbsResult>> out;
  for (auto& [key, docs] : slices) {
    try {
      out.emplace_back(key, compute_sbs(Corpus(std::move(docs)), brands, config));
    } catch (const ComputeError& e) {
      throw ComputeError("period " + key + ": " + e.what());
    }
  }
  return out;
}

}  // namespace sbs
