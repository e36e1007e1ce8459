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

#include "sbs/stats/ols.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sbs/error.hpp"

namespace sbs::stats {
namespace {

using nlohmann::json;

// Pivots below this fraction of the largest one count as zero.
constexpr double kRankThreshold = 1e-10;

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InputError(where + ": unknown key `" + key + "`");
    }
  }
}

ModelSpec parse_model(const json& j, std::size_t position) {
  const std::string where = "model " + std::to_string(position + 1);
  if (!j.is_object()) throw InputError(where + ": expected an object");
  reject_unknown_keys(j, {"name", "dependent", "transform", "predictors", "interactions"}, where);
  ModelSpec spec;
  spec.name = j.value("name", "Model " + std::to_string(position + 1));
  if (!j.contains("dependent") || !j["dependent"].is_string()) {
    throw InputError(where + ": `dependent` must be a string");
  }
  spec.dependent = j["dependent"].get<std::string>();
  if (j.contains("transform")) spec.transform = parse_transform(j["transform"].get<std::string>());
  if (j.contains("predictors")) {
    if (!j["predictors"].is_array()) throw InputError(where + ": `predictors` must be an array");
    for (const auto& p : j["predictors"]) {
      if (p.is_string()) {
        spec.predictors.push_back({p.get<std::string>(), PredictorKind::kAuto});
      } else if (p.is_object() && p.contains("name")) {
        reject_unknown_keys(p, {"name", "kind"}, where);
        spec.predictors.push_back({p["name"].get<std::string>(),
                                   parse_predictor_kind(p.value("kind", "auto"))});
      } else {
        throw InputError(where + ": a predictor is a name or {\"name\", \"kind\"}");
      }
    }
  }
  if (j.contains("interactions")) {
    for (const auto& pair : j["interactions"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw InputError(where + ": an interaction is a pair of predictor names");
      }
      spec.interactions.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  validate_model_spec(spec);
  return spec;
}

bool is_binary(double v) { return v == 0 || v == 1; }

Eigen::MatrixXd bread_of(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, Eigen::Index k) {
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const auto& p = qr.colsPermutation();
  return p * (r_inv * r_inv.transpose()) * p.transpose();
}

}  // namespace

Transform parse_transform(std::string_view name) {
  if (name == "none") return Transform::kNone;
  if (name == "log") return Transform::kLog;
  if (name == "log_then_z") return Transform::kLogThenZ;
  throw InputError("unknown transform `" + std::string(name) +
                   "` (expected none, log or log_then_z)");
}

std::string_view transform_name(Transform transform) {
  switch (transform) {
    case Transform::kNone:
      return "none";
    case Transform::kLog:
      return "log";
    case Transform::kLogThenZ:
      return "log_then_z";
  }
  return "";
}

PredictorKind parse_predictor_kind(std::string_view name) {
  if (name == "auto") return PredictorKind::kAuto;
  if (name == "continuous") return PredictorKind::kContinuous;
  if (name == "binary") return PredictorKind::kBinary;
  if (name == "categorical") return PredictorKind::kCategorical;
  throw InputError("unknown predictor kind `" + std::string(name) +
                   "` (expected auto, continuous, binary or categorical)");
}

std::string_view predictor_kind_name(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::kAuto:
      return "auto";
    case PredictorKind::kContinuous:
      return "continuous";
    case PredictorKind::kBinary:
      return "binary";
    case PredictorKind::kCategorical:
      return "categorical";
  }
  return "";
}

void validate_model_spec(const ModelSpec& spec) {
  const std::string where = spec.name.empty() ? "model" : "model `" + spec.name + "`";
  if (spec.dependent.empty()) throw InputError(where + ": empty dependent variable");
  std::set<std::string> names;
  for (const auto& p : spec.predictors) {
    if (p.name.empty()) throw InputError(where + ": empty predictor name");
    if (p.name == spec.dependent) {
      throw InputError(where + ": `" + p.name + "` is both dependent and predictor");
    }
    if (!names.insert(p.name).second) {
      throw InputError(where + ": duplicate predictor `" + p.name + "`");
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [a, b] : spec.interactions) {
    for (const auto& n : {a, b}) {
      if (!names.count(n)) {
        throw InputError(where + ": interaction term `" + n + "` is not a declared predictor");
      }
    }
    if (a == b) throw InputError(where + ": interaction of `" + a + "` with itself");
    if (!seen.insert(std::minmax(a, b)).second) {
      throw InputError(where + ": duplicate interaction " + a + "*" + b);
    }
  }
}

std::vector<ModelSpec> parse_model_suite(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("model spec is not valid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (j.contains("models")) {
      j = j["models"];
    } else {
      j = json::array({j});
    }
  }
  if (!j.is_array()) throw InputError("model spec must be an object or an array of models");
  std::vector<ModelSpec> suite;
  try {
    for (std::size_t i = 0; i < j.size(); ++i) suite.push_back(parse_model(j[i], i));
  } catch (const json::exception& e) {
    throw InputError(std::string("model spec: ") + e.what());
  }
  return suite;
}

std::vector<ModelSpec> load_model_suite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read model spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_suite(ss.str());
}

Design build_design(const DataFrame& data, const ModelSpec& spec) {
  validate_model_spec(spec);
  const std::size_t rows = data.rows();

  struct Column {
    const PredictorSpec* spec;
    PredictorKind kind;
    std::vector<double> values;               // numeric kinds
    const std::vector<std::string>* cells;  // categorical
  };
  std::vector<Column> columns;
  for (const auto& p : spec.predictors) {
    Column col{&p, p.kind, {}, &data.column(p.name)};
    if (col.kind == PredictorKind::kAuto) {
      if (!data.is_numeric(p.name)) {
        col.kind = PredictorKind::kCategorical;
      } else {
        const auto values = data.numeric(p.name);
        const bool binary = std::all_of(values.begin(), values.end(),
                                        [](double v) { return std::isnan(v) || is_binary(v); });
        col.kind = binary ? PredictorKind::kBinary : PredictorKind::kContinuous;
      }
    }
    if (col.kind != PredictorKind::kCategorical) col.values = data.numeric(p.name);
    columns.push_back(std::move(col));
  }
  const auto raw_y = data.numeric(spec.dependent);

  Design d;
  d.dependent = spec.dependent;
  d.transform = spec.transform;
  for (std::size_t r = 0; r < rows; ++r) {
    bool missing = std::isnan(raw_y[r]);
    for (const auto& col : columns) {
      missing = missing || is_missing((*col.cells)[r]);
    }
    if (missing) {
      ++d.dropped;
    } else {
      d.rows.push_back(r);
    }
  }
  const auto n = static_cast<Eigen::Index>(d.rows.size());
  if (n < 2) throw ComputeError("fewer than two complete observations after listwise deletion");

  const auto z_score = [&](Eigen::VectorXd& v, const std::string& what, double* center,
                           double* scale) {
    const double mean = v.mean();
    const double sd = std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (!(sd > 0)) throw ComputeError(what + " is constant over the estimation sample");
    v = (v.array() - mean) / sd;
    if (center) *center = mean;
    if (scale) *scale = sd;
  };

  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = raw_y[d.rows[i]];
    if (spec.transform != Transform::kNone && !(v > 0)) {
      throw InputError("dependent `" + spec.dependent + "` row " + std::to_string(d.rows[i] + 1) +
                       ": log requires a positive value");
    }
    d.y[i] = spec.transform == Transform::kNone ? v : std::log(v);
  }
  if (spec.transform == Transform::kLogThenZ) {
    z_score(d.y, "dependent `" + spec.dependent + "`", nullptr, nullptr);
  }

  std::vector<Eigen::VectorXd> cols;
  d.terms.push_back({"Constant", TermKind::kIntercept, "", 0, 1});
  cols.push_back(Eigen::VectorXd::Ones(n));
  std::map<std::string, std::size_t> term_of;  // predictor -> column (numeric kinds)
  for (const auto& col : columns) {
    const auto& name = col.spec->name;
    if (col.kind == PredictorKind::kCategorical) {
      std::set<std::string> levels;
      for (auto r : d.rows) levels.insert((*col.cells)[r]);
      if (levels.size() < 2) {
        throw ComputeError("categorical `" + name + "` has a single level in the sample");
      }
      for (auto it = std::next(levels.begin()); it != levels.end(); ++it) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = (*col.cells)[d.rows[i]] == *it ? 1.0 : 0.0;
        d.terms.push_back({name + "=" + *it, TermKind::kDummy, name, 0, 1});
        cols.push_back(std::move(v));
      }
      continue;
    }
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = col.values[d.rows[i]];
    Term term{name, TermKind::kBinary, name, 0, 1};
    if (col.kind == PredictorKind::kBinary) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!is_binary(v[i])) {
          throw InputError("binary predictor `" + name + "` row " +
                           std::to_string(d.rows[i] + 1) + " is not 0 or 1");
        }
      }
    } else {
      term.kind = TermKind::kContinuous;
      z_score(v, "predictor `" + name + "`", &term.center, &term.scale);
    }
    term_of[name] = cols.size();
    d.terms.push_back(std::move(term));
    cols.push_back(std::move(v));
  }
  for (const auto& [a, b] : spec.interactions) {
    if (!term_of.count(a) || !term_of.count(b)) {
      throw InputError("interaction " + a + "*" + b + " involves a categorical predictor");
    }
    cols.push_back(cols[term_of[a]].cwiseProduct(cols[term_of[b]]));
    d.terms.push_back({a + "*" + b, TermKind::kInteraction, a + "*" + b, 0, 1});
  }

  d.x.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) d.x.col(static_cast<Eigen::Index>(c)) = cols[c];
  return d;
}

CovarianceType parse_covariance(std::string_view name) {
  std::string lower(name);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "hc0") return CovarianceType::kHC0;
  if (lower == "hc1") return CovarianceType::kHC1;
  if (lower == "hc2") return CovarianceType::kHC2;
  if (lower == "hc3") return CovarianceType::kHC3;
  throw InputError("unknown robust covariance `" + std::string(name) +
                   "` (expected hc0, hc1, hc2 or hc3)");
}

std::string_view covariance_name(CovarianceType type) {
  switch (type) {
    case CovarianceType::kHC0:
      return "hc0";
    case CovarianceType::kHC1:
      return "hc1";
    case CovarianceType::kHC2:
      return "hc2";
    case CovarianceType::kHC3:
      return "hc3";
  }
  return "";
}

double t_test_p(double t, double df) {
  if (std::isnan(t)) return 1;
  if (std::isinf(t)) return 0;
  const double at = std::abs(t);
  if (df <= 0) {
    return 2 * boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), at));
  }
  return 2 * boost::math::cdf(
                 boost::math::complement(boost::math::students_t_distribution<double>(df), at));
}

Eigen::MatrixXd robust_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& residuals,
                                  CovarianceType type) {
  const auto n = x.rows();
  const auto k = x.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd bread = bread_of(qr, k);
  Eigen::ArrayXd omega = residuals.array().square();
  if (type == CovarianceType::kHC1) {
    omega *= static_cast<double>(n) / static_cast<double>(n - k);
  } else if (type == CovarianceType::kHC2 || type == CovarianceType::kHC3) {
    const Eigen::ArrayXd h = (x * bread).cwiseProduct(x).rowwise().sum().array();
    if ((h >= 1 - 1e-12).any()) {
      throw ComputeError("an observation has leverage 1; " +
                         std::string(covariance_name(type)) + " is undefined");
    }
    const Eigen::ArrayXd one_minus_h = 1 - h;
    omega /= type == CovarianceType::kHC2 ? one_minus_h : one_minus_h.square().eval();
  }
  const Eigen::MatrixXd meat = x.transpose() * (x.array().colwise() * omega).matrix();
  Eigen::MatrixXd cov = bread * meat * bread;
  return (cov + cov.transpose()) / 2;
}

std::optional<std::size_t> RegressionResult::find(std::string_view term) const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].name == term) return i;
  }
  return std::nullopt;
}

std::size_t RegressionResult::index_of(std::string_view term) const {
  if (auto i = find(term)) return *i;
  throw InputError("model `" + name + "` has no term `" + std::string(term) + "`");
}

RegressionResult fit_ols(const Design& design, CovarianceType type) {
  const auto& x = design.x;
  const auto& y = design.y;
  const auto n = x.rows();
  const auto k = x.cols();
  if (static_cast<std::size_t>(k) != design.terms.size() || y.size() != n) {
    throw InputError("design matrix does not match its term list");
  }
  if (n <= k) {
    throw ComputeError(std::to_string(n) + " observations for " + std::to_string(k) +
                       " terms; more observations than terms are needed");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < k) {
    std::string names;
    for (auto i = qr.rank(); i < k; ++i) {
      if (!names.empty()) names += ", ";
      names += design.terms[static_cast<std::size_t>(qr.colsPermutation().indices()[i])].name;
    }
    throw ComputeError("rank-deficient design; collinear with the other terms: " + names);
  }
  const double mean_y = y.mean();
  const double sst = (y.array() - mean_y).square().sum();
  if (!(sst > 0)) throw ComputeError("dependent `" + design.dependent + "` is constant");

  RegressionResult res;
  res.dependent = design.dependent;
  res.transform = design.transform;
  res.covariance_type = type;
  res.terms = design.terms;
  res.n_obs = static_cast<std::size_t>(n);
  res.df_resid = static_cast<std::size_t>(n - k);
  res.dropped = design.dropped;
  res.coefficients = qr.solve(y);
  res.residuals = y - x * res.coefficients;
  const double ssr = res.residuals.squaredNorm();
  res.r_squared = 1 - ssr / sst;
  const double dn = static_cast<double>(n);
  res.log_likelihood = -dn / 2 * (std::log(2 * std::numbers::pi) + 1 + std::log(ssr / dn));
  res.covariance = robust_covariance(x, res.residuals, type);
  res.standard_errors = res.covariance.diagonal().cwiseMax(0).cwiseSqrt();
  res.t_stats.resize(k);
  res.p_values.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double b = res.coefficients[i];
    const double se = res.standard_errors[i];
    res.t_stats[i] = se > 0 ? b / se : (b == 0 ? 0 : std::copysign(INFINITY, b));
    res.p_values[i] = t_test_p(res.t_stats[i], static_cast<double>(res.df_resid));
  }
  res.vifs = vif(design);
  return res;
}

RegressionResult fit_ols(const DataFrame& data, const ModelSpec& spec, CovarianceType type) {
  auto res = fit_ols(build_design(data, spec), type);
  res.name = spec.name;
  return res;
}

std::vector<Vif> vif(const Design& design) {
  const auto& x = design.x;
  const auto n = x.rows();
  const auto k = x.cols();
  std::vector<Vif> out;
  for (Eigen::Index j = 1; j < k; ++j) {
    Eigen::MatrixXd others(n, k - 1);
    others.leftCols(j) = x.leftCols(j);
    others.rightCols(k - 1 - j) = x.rightCols(k - 1 - j);
    const Eigen::VectorXd target = x.col(j);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(others);
    qr.setThreshold(kRankThreshold);
    const Eigen::VectorXd resid = target - others * qr.solve(target);
    const double sst = (target.array() - target.mean()).square().sum();
    const double unexplained = sst > 0 ? resid.squaredNorm() / sst : 0;
    Vif v{design.terms[static_cast<std::size_t>(j)].name, 0};
    v.value = unexplained <= 1e-12 ? std::numeric_limits<double>::infinity() : 1 / unexplained;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace sbs::stats
