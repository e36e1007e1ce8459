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

namespace sbs::stats {

// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho,
// accurate to about 1e-15 (Drezner-Wesolowsky with Genz's refinements).
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace sbs::stats
