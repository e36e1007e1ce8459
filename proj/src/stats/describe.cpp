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

#include "sbs/stats/describe.hpp"

#include <cmath>

#include "sbs/error.hpp"

namespace sbs::stats {

Summary describe(std::span<const double> values, std::string variable) {
  Summary s;
  s.variable = std::move(variable);
  double sum = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++s.n;
  }
  if (s.n < 2) {
    throw InputError("variable `" + s.variable + "` has fewer than two values");
  }
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
  }
  s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  return s;
}

std::vector<Summary> describe(const DataFrame& data, const std::vector<std::string>& variables) {
  std::vector<Summary> out;
  for (const auto& name : variables) out.push_back(describe(data.numeric(name), name));
  return out;
}

}  // namespace sbs::stats
