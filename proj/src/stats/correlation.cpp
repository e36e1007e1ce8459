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

#include "sbs/stats/correlation.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sbs/error.hpp"
#include "sbs/stats/bivariate_normal.hpp"
#include "sbs/stats/ols.hpp"

namespace sbs::stats {
namespace {

void require_same_size(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("correlation: variables differ in length");
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) + 2) / 2;  // 1-based average
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

TwoByTwo tabulate(std::span<const double> x, std::span<const double> y) {
  TwoByTwo t;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) {
      (y[i] == 1 ? t.a : t.b) += 1;
    } else {
      (y[i] == 1 ? t.c : t.d) += 1;
    }
  }
  return t;
}

double pearson_p(double r, std::size_t n) {
  if (std::abs(r) >= 1) return 0;
  const double df = static_cast<double>(n - 2);
  return t_test_p(r * std::sqrt(df / (1 - r * r)), df);
}

}  // namespace

VariableKind infer_kind(std::span<const double> values) {
  bool any = false;
  for (double v : values) {
    if (std::isnan(v)) continue;
    if (v != 0 && v != 1) return VariableKind::kContinuous;
    any = true;
  }
  return any ? VariableKind::kBinary : VariableKind::kContinuous;
}

std::string_view method_name(CorrelationMethod method) {
  switch (method) {
    case CorrelationMethod::kPearson:
      return "pearson";
    case CorrelationMethod::kPointBiserial:
      return "point_biserial";
    case CorrelationMethod::kTetrachoric:
      return "tetrachoric";
  }
  return "";
}

TetrachoricMode parse_tetrachoric_mode(std::string_view name) {
  if (name == "cosine_pi") return TetrachoricMode::kCosinePi;
  if (name == "ml") return TetrachoricMode::kMaximumLikelihood;
  throw InputError("unknown tetrachoric mode `" + std::string(name) +
                   "` (expected cosine_pi or ml)");
}

double tetrachoric_cosine_pi(const TwoByTwo& t) {
  const double ad = t.a * t.d;
  const double bc = t.b * t.c;
  if (bc == 0 && ad == 0) throw InputError("tetrachoric: degenerate 2x2 table");
  if (bc == 0) return 1;
  if (ad == 0) return -1;
  return std::cos(std::numbers::pi / (1 + std::sqrt(ad / bc)));
}

double tetrachoric_ml(const TwoByTwo& t) {
  const double ad = t.a * t.d;
  const double bc = t.b * t.c;
  if (bc == 0 || ad == 0) return tetrachoric_cosine_pi(t);
  const double n = t.a + t.b + t.c + t.d;
  const double h = normal_quantile((t.c + t.d) / n);  // x = 0 below h
  const double k = normal_quantile((t.b + t.d) / n);  // y = 0 below k
  const double ph = normal_cdf(h);
  const double pk = normal_cdf(k);
  const auto negative_ll = [&](double rho) {
    const double p00 = bivariate_normal_cdf(h, k, rho);
    const double p01 = ph - p00;
    const double p10 = pk - p00;
    const double p11 = 1 - ph - pk + p00;
    constexpr double kFloor = 1e-300;
    return -(t.d * std::log(std::max(p00, kFloor)) + t.c * std::log(std::max(p01, kFloor)) +
             t.b * std::log(std::max(p10, kFloor)) + t.a * std::log(std::max(p11, kFloor)));
  };
  constexpr double kEdge = 1 - 1e-12;
  return boost::math::tools::brent_find_minima(negative_ll, -kEdge, kEdge, 50).first;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw InputError("correlation: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Correlation correlate(std::span<const double> x_all, std::span<const double> y_all,
                      TetrachoricMode mode) {
  require_same_size(x_all, y_all);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < x_all.size(); ++i) {
    if (std::isnan(x_all[i]) || std::isnan(y_all[i])) continue;
    x.push_back(x_all[i]);
    y.push_back(y_all[i]);
  }
  if (x.size() < 3) throw InputError("correlation needs at least three paired observations");
  Correlation out;
  out.n = x.size();
  const auto kx = infer_kind(x);
  const auto ky = infer_kind(y);
  if (kx == VariableKind::kBinary && ky == VariableKind::kBinary) {
    out.method = CorrelationMethod::kTetrachoric;
    const auto t = tabulate(x, y);
    if (t.a + t.b == 0 || t.c + t.d == 0 || t.a + t.c == 0 || t.b + t.d == 0) {
      throw InputError("correlation: zero variance");
    }
    if (t.a * t.b * t.c * t.d == 0) {
      out.warnings.push_back("empty cell in the 2x2 table; tetrachoric correlation set to " +
                             std::string(t.b * t.c == 0 ? "+1" : "-1"));
    }
    out.r = mode == TetrachoricMode::kCosinePi ? tetrachoric_cosine_pi(t) : tetrachoric_ml(t);
    const double phi = (t.a * t.d - t.b * t.c) /
                       std::sqrt((t.a + t.b) * (t.c + t.d) * (t.a + t.c) * (t.b + t.d));
    const double chi2 = static_cast<double>(out.n) * phi * phi;
    out.p_value = boost::math::cdf(
        boost::math::complement(boost::math::chi_squared_distribution<double>(1), chi2));
    return out;
  }
  out.method = kx == ky ? CorrelationMethod::kPearson : CorrelationMethod::kPointBiserial;
  out.r = pearson(x, y);
  out.p_value = pearson_p(out.r, out.n);
  return out;
}

std::vector<CorrelationCell> correlation_table(const DataFrame& data,
                                               const std::vector<std::string>& variables,
                                               TetrachoricMode mode) {
  std::vector<std::vector<double>> columns;
  for (const auto& v : variables) columns.push_back(data.numeric(v));
  std::vector<CorrelationCell> cells;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      try {
        cells.push_back({variables[i], variables[j], correlate(columns[i], columns[j], mode)});
      } catch (const InputError& e) {
        throw InputError(variables[i] + " x " + variables[j] + ": " + e.what());
      }
    }
  }
  return cells;
}

}  // namespace sbs::stats
