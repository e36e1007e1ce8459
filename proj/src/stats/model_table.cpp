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

#include "sbs/stats/model_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sbs/csv.hpp"
#include "sbs/error.hpp"

namespace sbs::stats {
namespace {

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

std::string stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::vector<std::vector<std::string>> model_table_cells(std::span<const RegressionResult> results) {
  for (const auto& r : results) {
    if (r.dependent != results.front().dependent) {
      throw InputError("model table: models have different dependent variables (`" +
                       results.front().dependent + "` and `" + r.dependent + "`)");
    }
  }
  std::vector<std::string> terms;
  std::vector<std::string> groups;
  for (const auto& r : results) {
    for (const auto& t : r.terms) {
      auto& list = t.kind == TermKind::kDummy ? groups : terms;
      const auto& key = t.kind == TermKind::kDummy ? t.source : t.name;
      if (t.kind == TermKind::kIntercept) continue;
      if (std::find(list.begin(), list.end(), key) == list.end()) list.push_back(key);
    }
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{""};
  for (std::size_t m = 0; m < results.size(); ++m) {
    header.push_back(results[m].name.empty() ? "Model " + std::to_string(m + 1)
                                             : results[m].name);
  }
  rows.push_back(std::move(header));

  const auto coefficient_rows = [&](const std::string& label, const std::string& term) {
    std::vector<std::string> coef{label}, se{""};
    for (const auto& r : results) {
      if (auto i = r.find(term)) {
        const auto k = static_cast<Eigen::Index>(*i);
        coef.push_back(fixed(r.coefficients[k], 3) + stars(r.p_values[k]));
        se.push_back("(" + fixed(r.standard_errors[k], 3) + ")");
      } else {
        coef.push_back("-");
        se.push_back("");
      }
    }
    rows.push_back(std::move(coef));
    rows.push_back(std::move(se));
  };
  for (const auto& t : terms) coefficient_rows(t, t);
  for (const auto& g : groups) {
    std::vector<std::string> row{g + " dummies"};
    for (const auto& r : results) {
      const bool has = std::any_of(r.terms.begin(), r.terms.end(), [&](const Term& t) {
        return t.kind == TermKind::kDummy && t.source == g;
      });
      row.push_back(has ? "YES" : "NO");
    }
    rows.push_back(std::move(row));
  }
  coefficient_rows("Constant", "Constant");
  std::vector<std::string> obs{"Observations"}, ll{"Log-likelihood"}, r2{"R-squared"};
  for (const auto& r : results) {
    obs.push_back(std::to_string(r.n_obs));
    ll.push_back(fixed(r.log_likelihood, 2));
    r2.push_back(fixed(r.r_squared, 3));
  }
  rows.push_back(std::move(obs));
  rows.push_back(std::move(ll));
  rows.push_back(std::move(r2));
  return rows;
}

std::string model_table_text(std::span<const RegressionResult> results) {
  const auto rows = model_table_cells(results);
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  if (!results.empty()) {
    out += "Dependent variable: " + results.front().dependent + " (" +
           std::string(transform_name(results.front().transform)) + ")\n";
  }
  for (const auto& row : rows) {
    std::string line = row[0] + std::string(width[0] - row[0].size(), ' ');
    for (std::size_t c = 1; c < row.size(); ++c) {
      line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  out += "Robust standard errors in parentheses (" +
         std::string(results.empty() ? "" : covariance_name(results.front().covariance_type)) +
         ")\n*** p<0.01, ** p<0.05, * p<0.1\n";
  return out;
}

void write_model_table_csv(std::ostream& out, std::span<const RegressionResult> results) {
  for (const auto& row : model_table_cells(results)) csv::write_row(out, row);
}

std::string vif_table_text(const RegressionResult& result) {
  std::string out = "VIF (" + (result.name.empty() ? std::string("model") : result.name) + ")\n";
  std::size_t width = 0;
  for (const auto& v : result.vifs) width = std::max(width, v.term.size());
  double max = 0, sum = 0;
  for (const auto& v : result.vifs) {
    out += "  " + v.term + std::string(width - v.term.size(), ' ') + "  " + fixed(v.value, 3) +
           "\n";
    max = std::max(max, v.value);
    sum += v.value;
  }
  if (!result.vifs.empty()) {
    out += "  max " + fixed(max, 3) + ", mean " +
           fixed(sum / static_cast<double>(result.vifs.size()), 3) + "\n";
  }
  return out;
}

}  // namespace sbs::stats
