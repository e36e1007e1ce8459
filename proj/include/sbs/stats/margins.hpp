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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sbs/stats/ols.hpp"

namespace sbs::stats {

// The pieces of a fitted linear model with one interaction that the
// marginal effects depend on.
struct InteractionEstimates {
  double b_main = 0;         // coefficient of the term whose effect is wanted
  double b_interaction = 0;
  double var_main = 0;
  double var_interaction = 0;
  double cov = 0;            // Cov(b_main, b_interaction)
  double df = 0;             // residual df; 0 means normal inference
};

// Extracts the estimates for the effect of `main` moderated by `other`.
// Throws InputError when either term or their interaction is missing.
InteractionEstimates interaction_estimates(const RegressionResult& result,
                                           std::string_view main, std::string_view other);

struct MarginPoint {
  double at = 0;  // value of the other term in model units
  double effect = 0;
  double standard_error = 0;
  double t = 0;
  double p_value = 1;
  double ci_low = 0;
  double ci_high = 0;
};

// effect(d) = b_main + d * b_interaction with the delta-method variance
// var_main + d^2 var_interaction + 2 d cov.
MarginPoint marginal_effect(const InteractionEstimates& est, double at, double level = 0.95);

struct DifferenceTest {
  double estimate = 0;  // effect(1) - effect(0) = b_interaction
  double standard_error = 0;
  double t = 0;
  double p_value = 1;
};

struct AmeResult {
  std::string focal;
  std::string moderator;
  std::vector<MarginPoint> levels;
  DifferenceTest difference;
};

AmeResult ame(const InteractionEstimates& est, const std::vector<double>& levels = {0, 1});

// Average marginal effect of `focal` at the given levels of the binary
// `moderator`.
AmeResult ame(const RegressionResult& result, std::string_view focal,
              std::string_view moderator, const std::vector<double>& levels = {0, 1});

// Marginal effect of the binary `moderator` along a grid of `focal` values
// (in model units; continuous predictors are z-scores). An empty grid means
// -2, -1.5, ..., 2.
std::vector<MarginPoint> margins_curve(const RegressionResult& result, std::string_view focal,
                                       std::string_view moderator, std::vector<double> grid = {},
                                       double level = 0.95);

// CSV with columns at,effect,se,t,p,ci_low,ci_high.
void write_margins_csv(std::ostream& out, const std::vector<MarginPoint>& points);

// CSV with one row per level and a final "difference" row.
void write_ame_csv(std::ostream& out, const AmeResult& result);

// Text rendering: "0.351 (0.154) p=0.027" per level.
std::string ame_table_text(const AmeResult& result);

}  // namespace sbs::stats
