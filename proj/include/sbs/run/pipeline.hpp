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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sbs/brand_metrics.hpp"
#include "sbs/run/config.hpp"

namespace sbs::run {

struct RunReport {
  std::filesystem::path out;
  std::vector<std::string> files;  // written, in order, manifest last
  std::vector<std::string> warnings;
};

// Each run validates the configuration and its input files before any
// computation, writes its outputs atomically and finishes with
// manifest.json. Errors carry the stage in which they happened, e.g.
// "[graph] ...".
RunReport run_compute(const RunConfig& config);
RunReport run_analysis(const RunConfig& config);
RunReport run_margins(const RunConfig& config);
RunReport run_robustness(const RunConfig& config);
RunReport run_stats(const RunConfig& config);
RunReport run(const RunConfig& config, Command command);

// Score table. The period column is present when `period` is not empty.
std::string scores_csv(const std::vector<BrandScore>& scores, const std::string& period = {});

// Reads brand, sbs and sentiment (when present) back from a scores CSV.
std::map<std::string, BrandScore> read_scores_csv(const std::filesystem::path& path);

}  // namespace sbs::run
