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
#include <vector>

#include "sbs/stats/data_frame.hpp"

namespace sbs::stats {

struct Summary {
  std::string variable;
  std::size_t n = 0;  // non-missing values
  double mean = 0;
  double sd = 0;  // sample standard deviation (n - 1)
};

// NaN entries are skipped. Throws InputError with fewer than two values.
Summary describe(std::span<const double> values, std::string variable = {});
std::vector<Summary> describe(const DataFrame& data, const std::vector<std::string>& variables);

}  // namespace sbs::stats
