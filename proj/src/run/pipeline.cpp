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

#include "sbs/run/pipeline.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "sbs/corpus.hpp"
#include "sbs/csv.hpp"
#include "sbs/error.hpp"
#include "sbs/run/checksum.hpp"
#include "sbs/run/output.hpp"
#include "sbs/stats/correlation.hpp"
#include "sbs/stats/describe.hpp"
#include "sbs/stats/margins.hpp"
#include "sbs/stats/model_table.hpp"

namespace sbs::run {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Runs f, prefixing any library error with the stage name.
template <class F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const CorpusLoadError& e) {
    throw CorpusLoadError("[" + stage + "] " + e.what(), e.diagnostics());
  } catch (const InputError& e) {
    throw InputError("[" + stage + "] " + e.what());
  } catch (const ComputeError& e) {
    throw ComputeError("[" + stage + "] " + e.what());
  }
}

// Collects outputs and writes the manifest last.
class Run {
 public:
  Run(const RunConfig& config, Command command)
      : config_(config), command_(command), out_(config.out) {
    in_stage("validate", [&] { validate(config, command); });
    for (const auto& [role, path] : input_files(config, command)) {
      inputs_[role] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
    }
    report_.out = config.out;
  }

  void write(const std::string& name, const std::string& content) {
    in_stage("output", [&] { out_.write(name, content); });
    report_.files.push_back(name);
  }

  void warn(std::string message) { report_.warnings.push_back(std::move(message)); }
  json& extra() { return extra_; }

  RunReport finish() {
    json m;
    m["tool"] = "sbs";
    m["version"] = kVersion;
    m["command"] = command_name(command_);
    m["config"] = to_json(config_);
    m["inputs"] = inputs_.empty() ? json::object() : inputs_;
    m["outputs"] = out_.checksums();
    for (const auto& [key, value] : extra_.items()) m[key] = value;
    m["warnings"] = report_.warnings;
    write("manifest.json", m.dump(2) + "\n");
    return report_;
  }

 private:
  const RunConfig& config_;
  Command command_;
  OutputDir out_;
  json inputs_ = json::object();
  json extra_ = json::object();
  RunReport report_;
};

Corpus load_filtered(const RunConfig& c, Run& run) {
  auto loaded = in_stage("corpus", [&] { return load_corpus(c.corpus, parse_corpus_format(c.format)); });
  for (auto& w : loaded.warnings) run.warn("corpus: " + w);
  run.write("errors.json", error_report_json(loaded.errors) + "\n");
  run.extra()["corpus"] = {{"loaded", loaded.corpus.size()}, {"malformed", loaded.errors.size()}};
  if (c.from.empty() && c.to.empty() && c.sources.empty()) return std::move(loaded.corpus);
  const Date from = c.from.empty() ? Date{std::chrono::year{1}, std::chrono::January, std::chrono::day{1}}
                                   : parse_date(c.from);
  const Date to = c.to.empty() ? Date{std::chrono::year{9999}, std::chrono::December, std::chrono::day{31}}
                               : parse_date(c.to);
  std::optional<std::set<std::string>> sources;
  if (!c.sources.empty()) sources.emplace(c.sources.begin(), c.sources.end());
  auto filtered = in_stage("corpus", [&] { return filter_corpus(loaded.corpus, from, to, sources); });
  run.extra()["corpus"]["after_filter"] = filtered.size();
  if (filtered.empty()) run.warn("corpus: no documents left after filtering");
  return filtered;
}

json score_json(const BrandScore& s) {
  return {{"brand", s.brand},
          {"prevalence_raw", s.prevalence_raw},
          {"diversity_raw", s.diversity_raw},
          {"connectivity_raw", s.connectivity_raw},
          {"prevalence_z", s.prevalence_z},
          {"diversity_z", s.diversity_z},
          {"connectivity_z", s.connectivity_z},
          {"sbs", s.sbs},
          {"sentiment", s.sentiment},
          {"in_graph", s.in_graph}};
}

json moments_json(const Moments& m) { return {{"mean", m.mean}, {"sd", m.sd}}; }

json result_summary(const SbsResult& r) {
  json j;
  j["documents"] = r.documents;
  j["tokens"] = r.tokens;
  j["full_graph"] = json::parse(graph_stats_json(r.full_graph));
  j["filtered_graph"] = json::parse(graph_stats_json(r.filtered_graph));
  if (r.betweenness.kind == BetweennessMode::Kind::kExact) {
    j["betweenness"] = {{"mode", "exact"}};
  } else {
    j["betweenness"] = {{"mode", "approximate"},
                        {"pivots", r.betweenness.pivots},
                        {"seed", r.betweenness.seed}};
  }
  j["standardization"] = {{"population", population_name(r.base.population)},
                          {"size", r.base.size},
                          {"prevalence", moments_json(r.base.prevalence)},
                          {"diversity", moments_json(r.base.diversity)},
                          {"connectivity", moments_json(r.base.connectivity)}};
  return j;
}

SbsResult score(const Corpus& corpus, const std::vector<BrandSpec>& brands, const SbsConfig& cfg) {
  return in_stage("metrics", [&] {
    if (corpus.empty()) throw ComputeError("the corpus is empty");
    return compute_sbs(corpus, brands, cfg);
  });
}

struct Scored {
  std::vector<BrandSpec> brands;
  SbsConfig config;
  Corpus corpus;
};

Scored prepare_scoring(const RunConfig& c, Run& run) {
  Scored s;
  s.brands = in_stage("brands", [&] { return load_brand_specs(c.brands); });
  s.config = in_stage("config", [&] { return make_sbs_config(c); });
  s.corpus = load_filtered(c, run);
  return s;
}

// Adds the score columns to the firm data. Every firm whose brand has no
// score is reported.
void join_scores(stats::DataFrame& data, const std::map<std::string, BrandScore>& scores,
                 const RunConfig& c) {
  if (!data.has(c.join_column)) {
    throw InputError("firm data has no `" + c.join_column + "` column to join scores on");
  }
  const auto& keys = data.column(c.join_column);
  const std::vector<std::string>* ids = data.has("firm_id") ? &data.column("firm_id") : nullptr;
  std::vector<double> sbs(data.rows()), sentiment(data.rows());
  std::string failures;
  std::size_t failed = 0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto it = scores.find(keys[r]);
    if (it == scores.end()) {
      ++failed;
      failures += "\n  row " + std::to_string(r + 1) +
                  (ids ? " (firm " + (*ids)[r] + ")" : std::string()) + ": brand `" + keys[r] +
                  "` has no score";
      continue;
    }
    sbs[r] = it->second.sbs;
    sentiment[r] = it->second.sentiment;
  }
  if (failed) {
    throw InputError(std::to_string(failed) + " firm(s) could not be joined to scores:" + failures);
  }
  data.set_numeric("sbs", sbs);
  if (!data.has("sentiment")) data.set_numeric("sentiment", sentiment);
}

stats::DataFrame load_firm_data(const RunConfig& c, Run& run) {
  auto data = in_stage("data", [&] {
    auto d = stats::DataFrame::load_csv(c.data);
    stats::validate_firm_data(d);
    return d;
  });
  std::optional<std::map<std::string, BrandScore>> scores;
  if (!c.scores.empty()) {
    scores = in_stage("scores", [&] { return read_scores_csv(c.scores); });
  } else if (!c.corpus.empty()) {
    auto s = prepare_scoring(c, run);
    const auto result = score(s.corpus, s.brands, s.config);
    for (const auto& w : result.warnings) run.warn("metrics: " + w);
    run.write("scores.csv", scores_csv(result.scores));
    scores.emplace();
    for (const auto& b : result.scores) (*scores)[b.brand] = b;
  }
  if (scores) in_stage("join", [&] { join_scores(data, *scores, c); });
  return data;
}

std::vector<stats::RegressionResult> fit_suite(const RunConfig& c, const stats::DataFrame& data,
                                               Run& run) {
  const auto suite = in_stage("models", [&] {
    auto models = stats::load_model_suite(c.models);
    if (models.empty()) throw InputError("no models specified");
    return models;
  });
  const auto type = stats::parse_covariance(c.robust);
  std::vector<stats::RegressionResult> results;
  json fits = json::array();
  for (const auto& spec : suite) {
    results.push_back(in_stage("model " + spec.name, [&] { return stats::fit_ols(data, spec, type); }));
    const auto& r = results.back();
    if (r.dropped) {
      run.warn(spec.name + ": " + std::to_string(r.dropped) +
               " row(s) dropped for missing values");
    }
    fits.push_back({{"name", r.name}, {"n_obs", r.n_obs}, {"dropped", r.dropped}});
  }
  run.extra()["models"] = fits;
  return results;
}

// The last model that contains the focal x moderator interaction.
const stats::RegressionResult& interaction_model(const std::vector<stats::RegressionResult>& rs,
                                                 const RunConfig& c) {
  for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
    if (it->find(c.focal + "*" + c.moderator) || it->find(c.moderator + "*" + c.focal)) return *it;
  }
  throw InputError("no model contains the interaction of `" + c.focal + "` and `" + c.moderator +
                   "`");
}

void write_margins(const std::vector<stats::RegressionResult>& results, const RunConfig& c,
                   Run& run) {
  in_stage("margins", [&] {
    const auto& model = interaction_model(results, c);
    const auto a = stats::ame(model, c.focal, c.moderator);
    std::ostringstream ame_csv, levels_csv, curve_csv;
    stats::write_ame_csv(ame_csv, a);
    stats::write_margins_csv(levels_csv, a.levels);
    stats::write_margins_csv(curve_csv, stats::margins_curve(model, c.focal, c.moderator, c.grid));
    run.write("ame.csv", ame_csv.str());
    run.write("ame.txt", "Model: " + model.name + "\n" + stats::ame_table_text(a));
    run.write("margins_focal.csv", levels_csv.str());
    run.write("margins_moderator.csv", curve_csv.str());
    run.extra()["margins_model"] = model.name;
  });
}

}  // namespace

std::string scores_csv(const std::vector<BrandScore>& scores, const std::string& period) {
  std::ostringstream out;
  std::vector<std::string> header{"brand",          "prevalence_raw", "diversity_raw",
                                  "connectivity_raw", "prevalence_z", "diversity_z",
                                  "connectivity_z", "sbs",            "sentiment",
                                  "in_graph"};
  if (!period.empty()) header.insert(header.begin(), "period");
  csv::write_row(out, header);
  for (const auto& s : scores) {
    std::vector<std::string> row{s.brand,          std::to_string(s.prevalence_raw),
                                 num(s.diversity_raw), num(s.connectivity_raw),
                                 num(s.prevalence_z),  num(s.diversity_z),
                                 num(s.connectivity_z), num(s.sbs),
                                 num(s.sentiment),      s.in_graph ? "1" : "0"};
    if (!period.empty()) row.insert(row.begin(), period);
    csv::write_row(out, row);
  }
  return out.str();
}

std::map<std::string, BrandScore> read_scores_csv(const std::filesystem::path& path) {
  const auto df = stats::DataFrame::load_csv(path);
  if (!df.has("brand") || !df.has("sbs")) {
    throw InputError("scores file " + path.string() + " needs `brand` and `sbs` columns");
  }
  if (df.has("period")) {
    throw InputError("scores file " + path.string() + " is sliced by period; pick one slice");
  }
  const auto& brands = df.column("brand");
  const auto sbs = df.numeric("sbs");
  const auto sentiment = df.has("sentiment") ? df.numeric("sentiment") : std::vector<double>(df.rows(), 0);
  std::map<std::string, BrandScore> out;
  for (std::size_t r = 0; r < df.rows(); ++r) {
    BrandScore s;
    s.brand = brands[r];
    s.sbs = sbs[r];
    s.sentiment = sentiment[r];
    if (!out.emplace(s.brand, s).second) {
      throw InputError("scores file lists brand `" + s.brand + "` twice");
    }
  }
  return out;
}

RunReport run_compute(const RunConfig& c) {
  Run run(c, Command::kCompute);
  auto s = prepare_scoring(c, run);
  if (c.slice == "none") {
    auto result = score(s.corpus, s.brands, s.config);
    for (const auto& w : result.warnings) run.warn("metrics: " + w);
    json scores = json::array();
    for (const auto& b : result.scores) scores.push_back(score_json(b));
    run.write("scores.csv", scores_csv(result.scores));
    run.write("scores.json", scores.dump(2) + "\n");
    run.write("graph_stats.json", result_summary(result).dump(2) + "\n");
    if (result.graph) {
      std::ostringstream edges, nodes;
      write_edge_list(*result.graph, edges);
      write_node_table(*result.graph, nodes);
      run.write("edges.csv", edges.str());
      run.write("nodes.json", nodes.str());
    }
    return run.finish();
  }
  const auto slices = in_stage("metrics", [&] {
    return compute_sbs_by_period(s.corpus, s.brands, s.config, parse_period(c.slice));
  });
  std::string csv_text;
  json scores = json::array(), summaries = json::object();
  for (const auto& [period, result] : slices) {
    for (const auto& w : result.warnings) run.warn("metrics " + period + ": " + w);
    auto text = scores_csv(result.scores, period);
    csv_text += csv_text.empty() ? text : text.substr(text.find('\n') + 1);
    for (const auto& b : result.scores) {
      auto j = score_json(b);
      j["period"] = period;
      scores.push_back(std::move(j));
    }
    summaries[period] = result_summary(result);
  }
  run.write("scores.csv", csv_text);
  run.write("scores.json", scores.dump(2) + "\n");
  run.write("graph_stats.json", summaries.dump(2) + "\n");
  return run.finish();
}

RunReport run_analysis(const RunConfig& c) {
  Run run(c, Command::kRegress);
  const auto data = load_firm_data(c, run);
  const auto results = fit_suite(c, data, run);
  std::ostringstream table_csv;
  stats::write_model_table_csv(table_csv, results);
  run.write("model_table.txt", stats::model_table_text(results));
  run.write("model_table.csv", table_csv.str());
  std::string vifs;
  for (const auto& r : results) vifs += stats::vif_table_text(r);
  run.write("vif.txt", vifs);
  if (!c.focal.empty() && !c.moderator.empty()) write_margins(results, c, run);
  return run.finish();
}

RunReport run_margins(const RunConfig& c) {
  Run run(c, Command::kMargins);
  const auto data = load_firm_data(c, run);
  write_margins(fit_suite(c, data, run), c, run);
  return run.finish();
}

RunReport run_robustness(const RunConfig& c) {
  Run run(c, Command::kRobustness);
  auto s = prepare_scoring(c, run);
  std::vector<std::pair<std::size_t, std::vector<double>>> sbs_by_window;
  for (auto w : c.windows) {
    auto cfg = s.config;
    cfg.window = w;
    const auto result = in_stage("window " + std::to_string(w),
                                 [&] { return score(s.corpus, s.brands, cfg); });
    for (const auto& warning : result.warnings) {
      run.warn("window " + std::to_string(w) + ": " + warning);
    }
    std::vector<double> values;
    for (const auto& b : result.scores) values.push_back(b.sbs);
    sbs_by_window.emplace_back(w, std::move(values));
    run.write("scores_w" + std::to_string(w) + ".csv", scores_csv(result.scores));
  }
  std::ostringstream out;
  csv::write_row(out, {"window_a", "window_b", "brands", "spearman"});
  for (std::size_t i = 0; i < sbs_by_window.size(); ++i) {
    for (std::size_t j = i + 1; j < sbs_by_window.size(); ++j) {
      const double rho = in_stage("robustness", [&]() -> double {
        try {
          return stats::spearman(sbs_by_window[i].second, sbs_by_window[j].second);
        } catch (const InputError& e) {
          throw ComputeError(std::string("rank correlation undefined: ") + e.what());
        }
      });
      csv::write_row(out, {std::to_string(sbs_by_window[i].first),
                           std::to_string(sbs_by_window[j].first),
                           std::to_string(sbs_by_window[i].second.size()), num(rho)});
    }
  }
  run.write("robustness.csv", out.str());
  return run.finish();
}

RunReport run_stats(const RunConfig& c) {
  Run run(c, Command::kStats);
  const auto data = in_stage("data", [&] { return stats::DataFrame::load_csv(c.data); });
  std::ostringstream desc, corr;
  in_stage("stats", [&] {
    csv::write_row(desc, {"variable", "n", "mean", "sd"});
    for (const auto& s : stats::describe(data, c.variables)) {
      csv::write_row(desc, {s.variable, std::to_string(s.n), num(s.mean), num(s.sd)});
    }
    csv::write_row(corr, {"row", "column", "method", "r", "p", "n"});
    const auto mode = stats::parse_tetrachoric_mode(c.tetrachoric);
    for (const auto& cell : stats::correlation_table(data, c.variables, mode)) {
      csv::write_row(corr, {cell.row, cell.column, std::string(stats::method_name(cell.value.method)),
                            num(cell.value.r), num(cell.value.p_value),
                            std::to_string(cell.value.n)});
      for (const auto& w : cell.value.warnings) run.warn(cell.row + " x " + cell.column + ": " + w);
    }
  });
  run.write("descriptives.csv", desc.str());
  run.write("correlations.csv", corr.str());
  return run.finish();
}

RunReport run(const RunConfig& config, Command command) {
  switch (command) {
    case Command::kCompute:
      return run_compute(config);
    case Command::kRegress:
      return run_analysis(config);
    case Command::kMargins:
      return run_margins(config);
    case Command::kRobustness:
      return run_robustness(config);
    case Command::kStats:
      return run_stats(config);
  }
  throw InputError("unknown command");
}

}  // namespace sbs::run
