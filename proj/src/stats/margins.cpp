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

#include "sbs/stats/margins.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>

#include "sbs/csv.hpp"
#include "sbs/error.hpp"

namespace sbs::stats {
namespace {

double critical_value(double level, double df) {
  if (!(level > 0 && level < 1)) throw InputError("confidence level must be in (0, 1)");
  const double q = 1 - (1 - level) / 2;
  if (df <= 0) return boost::math::quantile(boost::math::normal_distribution<double>(), q);
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), q);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

InteractionEstimates interaction_estimates(const RegressionResult& result, std::string_view main,
                                           std::string_view other) {
  const auto m = result.index_of(main);
  result.index_of(other);
  auto i = result.find(std::string(main) + "*" + std::string(other));
  if (!i) i = result.find(std::string(other) + "*" + std::string(main));
  if (!i) {
    throw InputError("model `" + result.name + "` has no interaction of `" + std::string(main) +
                     "` and `" + std::string(other) + "`");
  }
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ii = static_cast<Eigen::Index>(*i);
  InteractionEstimates est;
  est.b_main = result.coefficients[mi];
  est.b_interaction = result.coefficients[ii];
  est.var_main = result.covariance(mi, mi);
  est.var_interaction = result.covariance(ii, ii);
  est.cov = result.covariance(mi, ii);
  est.df = static_cast<double>(result.df_resid);
  return est;
}

MarginPoint marginal_effect(const InteractionEstimates& est, double at, double level) {
  MarginPoint p;
  p.at = at;
  p.effect = est.b_main + at * est.b_interaction;
  const double var = est.var_main + at * at * est.var_interaction + 2 * at * est.cov;
  p.standard_error = std::sqrt(std::max(var, 0.0));
  p.t = p.standard_error > 0 ? p.effect / p.standard_error : 0;
  p.p_value = p.standard_error > 0 ? t_test_p(p.t, est.df) : 1;
  const double half = critical_value(level, est.df) * p.standard_error;
  p.ci_low = p.effect - half;
  p.ci_high = p.effect + half;
  return p;
}

AmeResult ame(const InteractionEstimates& est, const std::vector<double>& levels) {
  AmeResult out;
  for (double d : levels) out.levels.push_back(marginal_effect(est, d));
  auto& diff = out.difference;
  diff.estimate = est.b_interaction;
  diff.standard_error = std::sqrt(std::max(est.var_interaction, 0.0));
  diff.t = diff.standard_error > 0 ? diff.estimate / diff.standard_error : 0;
  diff.p_value = diff.standard_error > 0 ? t_test_p(diff.t, est.df) : 1;
  return out;
}

AmeResult ame(const RegressionResult& result, std::string_view focal, std::string_view moderator,
              const std::vector<double>& levels) {
  const auto m = result.index_of(moderator);
  if (result.terms[m].kind != TermKind::kBinary) {
    throw InputError("moderator `" + std::string(moderator) + "` is not a binary term");
  }
  auto out = ame(interaction_estimates(result, focal, moderator), levels);
  out.focal = focal;
  out.moderator = moderator;
  return out;
}

std::vector<MarginPoint> margins_curve(const RegressionResult& result, std::string_view focal,
                                       std::string_view moderator, std::vector<double> grid,
                                       double level) {
  const auto m = result.index_of(moderator);
  if (result.terms[m].kind != TermKind::kBinary) {
    throw InputError("moderator `" + std::string(moderator) + "` is not a binary term");
  }
  if (grid.empty()) {
    for (int i = -4; i <= 4; ++i) grid.push_back(i * 0.5);
  }
  const auto est = interaction_estimates(result, moderator, focal);
  std::vector<MarginPoint> out;
  for (double x : grid) out.push_back(marginal_effect(est, x, level));
  return out;
}

void write_margins_csv(std::ostream& out, const std::vector<MarginPoint>& points) {
  csv::write_row(out, {"at", "effect", "se", "t", "p", "ci_low", "ci_high"});
  for (const auto& p : points) {
    csv::write_row(out, {num(p.at), num(p.effect), num(p.standard_error), num(p.t),
                         num(p.p_value), num(p.ci_low), num(p.ci_high)});
  }
}

void write_ame_csv(std::ostream& out, const AmeResult& result) {
  csv::write_row(out, {"focal", "moderator", "level", "ame", "se", "t", "p", "ci_low", "ci_high"});
  for (const auto& p : result.levels) {
    csv::write_row(out, {result.focal, result.moderator, num(p.at), num(p.effect),
                         num(p.standard_error), num(p.t), num(p.p_value), num(p.ci_low),
                         num(p.ci_high)});
  }
  const auto& d = result.difference;
  csv::write_row(out, {result.focal, result.moderator, "difference", num(d.estimate),
                       num(d.standard_error), num(d.t), num(d.p_value), "", ""});
}

std::string ame_table_text(const AmeResult& result) {
  std::string out = "AME of " + result.focal + " by " + result.moderator + "\n";
  for (const auto& p : result.levels) {
    out += "  " + result.moderator + " = " + num(p.at) + ": " + fixed3(p.effect) + " (" +
           fixed3(p.standard_error) + ") p=" + fixed3(p.p_value) + "\n";
  }
  const auto& d = result.difference;
  out += "  difference: " + fixed3(d.estimate) + " (" + fixed3(d.standard_error) +
         ") t=" + fixed3(d.t) + " p=" + fixed3(d.p_value) + "\n";
  return out;
}

}  // namespace sbs::stats
