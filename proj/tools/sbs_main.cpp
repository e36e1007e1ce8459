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

// sbs: brand scores from text corpora and the regressions built on them.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbs/corpus.hpp"
#include "sbs/error.hpp"
#include "sbs/run/config.hpp"
#include "sbs/run/pipeline.hpp"

namespace {

using sbs::run::Command;
using sbs::run::RunConfig;

constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

// Flags given on the command line; applied over the config file.
class Overrides {
 public:
  template <class T>
  void add(CLI::App* app, const std::string& flag, const std::string& help,
           std::function<void(RunConfig&, const T&)> apply) {
    auto value = std::make_shared<T>();
    auto* opt = app->add_option(flag, *value, help);
    entries_.push_back({opt, [value, apply](RunConfig& c) { apply(c, *value); }});
  }

  void flag(CLI::App* app, const std::string& flag, const std::string& help,
            std::function<void(RunConfig&)> apply) {
    auto* opt = app->add_flag(flag, help);
    entries_.push_back({opt, std::move(apply)});
  }

  void apply(RunConfig& config) const {
    for (const auto& e : entries_) {
      if (e.option->count() > 0) e.apply(config);
    }
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::function<void(RunConfig&)> apply;
  };
  std::vector<Entry> entries_;
};

#define SET(field) [](RunConfig& c, const auto& v) { c.field = v; }

void add_common(CLI::App* app, Overrides& o) {
  o.add<unsigned>(app, "--threads", "Worker threads (0 = all cores)", SET(threads));
  o.add<std::string>(app, "--out", "Output directory", SET(out));
}

void add_scoring(CLI::App* app, Overrides& o) {
  o.add<std::string>(app, "--corpus", "Corpus file", SET(corpus));
  o.add<std::string>(app, "--format", "Corpus format: jsonl or csv", SET(format));
  o.add<std::string>(app, "--from", "First date kept (YYYY-MM-DD)", SET(from));
  o.add<std::string>(app, "--to", "Last date kept (YYYY-MM-DD)", SET(to));
  o.add<std::vector<std::string>>(app, "--sources", "Sources kept", SET(sources));
  o.add<std::string>(app, "--brands", "Brand spec JSON", SET(brands));
  o.add<std::string>(app, "--stopwords", "default, none or a stopword file", SET(stopwords));
  o.add<std::string>(app, "--stemmer", "none, english, italian or rules:<file>", SET(stemmer));
  o.flag(app, "--keep-case", "Do not lowercase tokens", [](RunConfig& c) { c.lowercase = false; });
  o.flag(app, "--keep-numbers", "Keep numeric tokens",
         [](RunConfig& c) { c.drop_numeric = false; });
  o.add<std::size_t>(app, "--min-token-length", "Shortest token kept", SET(min_token_length));
  o.add<std::size_t>(app, "--window", "Co-occurrence window", SET(window));
  o.add<std::uint64_t>(app, "--min-edge-weight", "Lightest edge kept", SET(min_edge_weight));
  o.add<std::string>(app, "--std-base", "all_nodes or brands_only", SET(std_base));
  o.add<std::string>(app, "--betweenness", "auto, exact or approx:<k>,<seed>",
                     [](RunConfig& c, const std::string& v) { sbs::run::set_betweenness(c, v); });
  o.add<std::size_t>(app, "--pivots", "Pivots for approximate betweenness", SET(pivots));
  o.add<std::uint64_t>(app, "--seed", "Seed for pivot sampling",
                       [](RunConfig& c, const std::uint64_t& v) { c.seed = v; });
  o.add<std::size_t>(app, "--exact-node-cap", "Largest graph scored exactly in auto mode",
                     SET(exact_node_cap));
  o.add<std::string>(app, "--distance", "reciprocal or reciprocal_log1p", SET(distance));
  o.add<std::string>(app, "--lexicon", "Sentiment lexicon CSV (token,polarity)", SET(lexicon));
}

void add_analysis(CLI::App* app, Overrides& o) {
  o.add<std::string>(app, "--data", "Firm data CSV", SET(data));
  o.add<std::string>(app, "--models", "Model suite JSON", SET(models));
  o.add<std::string>(app, "--spec", "Alias of --models", SET(models));
  o.add<std::string>(app, "--scores", "Precomputed scores.csv", SET(scores));
  o.add<std::string>(app, "--join-column", "Firm data column holding the brand", SET(join_column));
  o.add<std::string>(app, "--robust", "hc0, hc1, hc2 or hc3", SET(robust));
  o.add<std::string>(app, "--focal", "Focal predictor for marginal effects", SET(focal));
  o.add<std::string>(app, "--moderator", "Binary moderator", SET(moderator));
  o.add<std::vector<double>>(app, "--grid", "Focal values for the moderator curve", SET(grid));
}

#undef SET

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic Brand Score analytics"};
  app.require_subcommand(1);
  std::string config_path;

  struct Verb {
    Command command;
    CLI::App* app;
    Overrides overrides;
  };
  std::vector<std::unique_ptr<Verb>> verbs;
  const auto verb = [&](Command command, const std::string& help) -> Verb& {
    auto v = std::make_unique<Verb>();
    v->command = command;
    v->app = app.add_subcommand(std::string(sbs::run::command_name(command)), help);
    v->app->add_option("--config", config_path, "JSON config or a previous run manifest");
    add_common(v->app, v->overrides);
    verbs.push_back(std::move(v));
    return *verbs.back();
  };

  auto& compute = verb(Command::kCompute, "Score brands in a corpus");
  add_scoring(compute.app, compute.overrides);
  compute.overrides.add<std::string>(compute.app, "--slice", "none, year or month",
                                     [](RunConfig& c, const std::string& v) { c.slice = v; });
  compute.overrides.flag(compute.app, "--export-graph", "Write edges.csv and nodes.json",
                         [](RunConfig& c) { c.export_graph = true; });

  auto& regress = verb(Command::kRegress, "Fit the model suite on firm data");
  add_scoring(regress.app, regress.overrides);
  add_analysis(regress.app, regress.overrides);

  auto& margins = verb(Command::kMargins, "Average marginal effects of an interaction");
  add_scoring(margins.app, margins.overrides);
  add_analysis(margins.app, margins.overrides);

  auto& robustness = verb(Command::kRobustness, "Rank agreement of scores across windows");
  add_scoring(robustness.app, robustness.overrides);
  robustness.overrides.add<std::vector<std::size_t>>(
      robustness.app, "--windows", "Windows to compare",
      [](RunConfig& c, const std::vector<std::size_t>& v) { c.windows = v; });

  auto& stats = verb(Command::kStats, "Descriptives and correlations");
  stats.overrides.add<std::string>(stats.app, "--data", "Data CSV",
                                   [](RunConfig& c, const std::string& v) { c.data = v; });
  stats.overrides.add<std::vector<std::string>>(
      stats.app, "--variables", "Variables to describe",
      [](RunConfig& c, const std::vector<std::string>& v) { c.variables = v; });
  stats.overrides.add<std::string>(stats.app, "--tetrachoric", "cosine_pi or ml",
                                   [](RunConfig& c, const std::string& v) { c.tetrachoric = v; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    for (const auto& v : verbs) {
      if (!v->app->parsed()) continue;
      RunConfig config;
      if (!config_path.empty()) config = sbs::run::load_config(config_path);
      v->overrides.apply(config);
      const auto report = sbs::run::run(config, v->command);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& f : report.files) std::cout << (report.out / f).string() << "\n";
    }
  } catch (const sbs::CorpusLoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::size_t shown = 0;
    for (const auto& d : e.diagnostics()) {
      if (++shown > 20) {
        std::cerr << "  ... " << e.diagnostics().size() - 20 << " more\n";
        break;
      }
      std::cerr << "  line " << d.line << ": " << d.reason << "\n";
    }
    return kExitInput;
  } catch (const sbs::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sbs::ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitCompute;
  }
  return 0;
}
