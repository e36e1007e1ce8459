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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbs/stats/data_frame.hpp"

namespace sbs::stats {

enum class VariableKind { kContinuous, kBinary };

// Binary when every non-missing value is 0 or 1.
VariableKind infer_kind(std::span<const double> values);

enum class CorrelationMethod { kPearson, kPointBiserial, kTetrachoric };
std::string_view method_name(CorrelationMethod method);

enum class TetrachoricMode { kCosinePi, kMaximumLikelihood };
TetrachoricMode parse_tetrachoric_mode(std::string_view name);

// 2x2 table of two binaries: a = (1,1), b = (1,0), c = (0,1), d = (0,0).
// a and d are the concordant cells.
struct TwoByTwo {
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
};

// cos(pi / (1 + sqrt(ad / bc))); +1 when bc = 0, -1 when ad = 0.
double tetrachoric_cosine_pi(const TwoByTwo& t);

// Maximum-likelihood correlation of the latent bivariate normal with the
// thresholds fixed at the observed margins.
double tetrachoric_ml(const TwoByTwo& t);

double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of the average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

struct Correlation {
  CorrelationMethod method = CorrelationMethod::kPearson;
  double r = 0;
  double p_value = 1;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

// Picks the method from the variable kinds: Pearson for two continuous,
// point-biserial for binary and continuous, tetrachoric for two binaries.
// Pairs with a NaN on either side are skipped. p-values: t test with n - 2
// degrees of freedom for Pearson and point-biserial, chi-square test of
// independence of the 2x2 table for tetrachoric. Throws InputError with fewer
// than three pairs or a zero-variance variable; an empty 2x2 cell gives +-1
// and a warning.
Correlation correlate(std::span<const double> x, std::span<const double> y,
                      TetrachoricMode mode = TetrachoricMode::kCosinePi);

struct CorrelationCell {
  std::string row;
  std::string column;
  Correlation value;
};

// Lower triangle of the pairwise correlations of `variables`.
std::vector<CorrelationCell> correlation_table(const DataFrame& data,
                                               const std::vector<std::string>& variables,
                                               TetrachoricMode mode = TetrachoricMode::kCosinePi);

}  // namespace sbs::stats
