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

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sbs/stats/data_frame.hpp"

namespace sbs::stats {

enum class Transform { kNone, kLog, kLogThenZ };
Transform parse_transform(std::string_view name);
std::string_view transform_name(Transform transform);

enum class PredictorKind { kAuto, kContinuous, kBinary, kCategorical };
PredictorKind parse_predictor_kind(std::string_view name);
std::string_view predictor_kind_name(PredictorKind kind);

struct PredictorSpec {
  std::string name;
  PredictorKind kind = PredictorKind::kAuto;

  bool operator==(const PredictorSpec&) const = default;
};

struct ModelSpec {
  std::string name;  // column label in tables
  std::string dependent;
  Transform transform = Transform::kLogThenZ;
  std::vector<PredictorSpec> predictors;
  std::vector<std::pair<std::string, std::string>> interactions;

  bool operator==(const ModelSpec&) const = default;
};

// Throws InputError for an empty dependent, duplicate predictors, an
// interaction naming an undeclared predictor, or a duplicate interaction.
void validate_model_spec(const ModelSpec& spec);

// One model:
//   {"name": "Model 1", "dependent": "revenues", "transform": "log_then_z",
//    "predictors": ["sbs", {"name": "geo", "kind": "categorical"}],
//    "interactions": [["sbs", "name_overlap"]]}
// A suite is an array of models or {"models": [...]}. Unnamed models are
// called "Model 1", "Model 2", ... by position.
std::vector<ModelSpec> parse_model_suite(std::string_view json_text);
std::vector<ModelSpec> load_model_suite(const std::filesystem::path& path);

enum class TermKind { kIntercept, kContinuous, kBinary, kDummy, kInteraction };

// A design-matrix column. Continuous columns hold (raw - center) / scale.
struct Term {
  std::string name;    // "sbs", "geo=north", "sbs*name_overlap", "Constant"
  TermKind kind = TermKind::kContinuous;
  std::string source;  // the data column; the categorical variable for dummies
  double center = 0;
  double scale = 1;
};

struct Design {
  std::string dependent;
  Transform transform = Transform::kNone;
  std::vector<Term> terms;  // terms[0] is the intercept
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::size_t> rows;  // data rows kept after listwise deletion
  std::size_t dropped = 0;
};

// Builds the design: listwise deletion over every referenced column, the
// dependent transform, z-scores (sample sd) for continuous predictors, raw
// binaries, one dummy per categorical level except the alphabetically first,
// and products of the transformed columns for interactions. Throws
// InputError for unknown columns, non-numeric values in numeric terms,
// non-binary values in binary terms, non-positive values under a log, or an
// interaction involving a categorical; ComputeError for a constant
// continuous column or a categorical with a single level.
Design build_design(const DataFrame& data, const ModelSpec& spec);

enum class CovarianceType { kHC0, kHC1, kHC2, kHC3 };
CovarianceType parse_covariance(std::string_view name);
std::string_view covariance_name(CovarianceType type);

struct Vif {
  std::string term;
  double value = 1;  // +inf under perfect collinearity
};

struct RegressionResult {
  std::string name;
  std::string dependent;
  Transform transform = Transform::kNone;
  CovarianceType covariance_type = CovarianceType::kHC1;
  std::vector<Term> terms;
  Eigen::VectorXd coefficients;
  Eigen::MatrixXd covariance;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;  // two-sided, t distribution with df_resid
  Eigen::VectorXd residuals;
  double r_squared = 0;
  double log_likelihood = 0;  // Gaussian, at the ML error variance
  std::size_t n_obs = 0;
  std::size_t df_resid = 0;
  std::size_t dropped = 0;
  std::vector<Vif> vifs;

  std::optional<std::size_t> find(std::string_view term) const;
  // Throws InputError when the term is absent.
  std::size_t index_of(std::string_view term) const;
};

// Least squares through column-pivoted QR. Throws ComputeError when
// n_obs <= number of terms, when the dependent is constant, or when the
// design is rank deficient (the message names the collinear terms).
RegressionResult fit_ols(const Design& design, CovarianceType type = CovarianceType::kHC1);
RegressionResult fit_ols(const DataFrame& data, const ModelSpec& spec,
                         CovarianceType type = CovarianceType::kHC1);

// Heteroskedasticity-consistent covariance of the least-squares
// coefficients for a full-rank x and its residuals.
Eigen::MatrixXd robust_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& residuals,
                                  CovarianceType type);

// VIF of every non-intercept column: 1 / (1 - R2) of that column regressed
// on the intercept and the other columns.
std::vector<Vif> vif(const Design& design);

// Two-sided p-value of a t statistic; df = 0 means the normal distribution.
double t_test_p(double t, double df);

}  // namespace sbs::stats
