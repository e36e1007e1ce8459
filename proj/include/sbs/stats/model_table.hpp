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

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sbs/stats/ols.hpp"

namespace sbs::stats {

// "*" for p < 0.1, "**" for p < 0.05, "***" for p < 0.01.
std::string stars(double p);

// Cells of the comparison table. Rows: each non-dummy term in order of first
// appearance with its coefficient and, below it, the standard error in
// parentheses; one "<variable> dummies" row per categorical; then Constant,
// Observations, Log-likelihood and R-squared. Terms a model lacks are "-".
// Throws InputError when the models have different dependent variables.
std::vector<std::vector<std::string>> model_table_cells(std::span<const RegressionResult> results);

std::string model_table_text(std::span<const RegressionResult> results);
void write_model_table_csv(std::ostream& out, std::span<const RegressionResult> results);

// VIF listing with the maximum and the mean.
std::string vif_table_text(const RegressionResult& result);

}  // namespace sbs::stats
