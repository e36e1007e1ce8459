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

#include "sbs/stats/bivariate_normal.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace sbs::stats {
namespace {

// Gauss-Legendre half-rules on [-1, 1]: positive abscissae and weights.
constexpr double kW6[] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr double kX6[] = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr double kW12[] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                           0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
constexpr double kX12[] = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                           0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
constexpr double kW20[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                           0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                           0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
                           0.1527533871307259};
constexpr double kX20[] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                           0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                           0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
                           0.07652652113349733};

// P(X > h, Y > k).
double upper(double h, double k, double r) {
  constexpr double kTwoPi = 2 * std::numbers::pi;
  const double inf = std::numeric_limits<double>::infinity();
  if (h == inf || k == inf) return 0;
  if (h == -inf) return k == -inf ? 1 : normal_cdf(-k);
  if (k == -inf) return normal_cdf(-h);
  if (r == 0) return normal_cdf(-h) * normal_cdf(-k);

  const double* w;
  const double* x;
  int m;
  if (std::abs(r) < 0.3) {
    w = kW6, x = kX6, m = 3;
  } else if (std::abs(r) < 0.75) {
    w = kW12, x = kX12, m = 6;
  } else {
    w = kW20, x = kX20, m = 10;
  }
  // Nodes mapped from [-1, 1] to [0, 2].
  const auto for_nodes = [&](auto&& f) {
    double s = 0;
    for (int i = 0; i < m; ++i) s += w[i] * (f(1 - x[i]) + f(1 + x[i]));
    return s;
  };

  double hk = h * k;
  double bvn = 0;
  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2;
    const double asr = std::asin(r) / 2;
    bvn = for_nodes([&](double t) {
      const double sn = std::sin(asr * t);
      return std::exp((sn * hk - hs) / (1 - sn * sn));
    });
    return std::clamp(bvn * asr / kTwoPi + normal_cdf(-h) * normal_cdf(-k), 0.0, 1.0);
  }
  if (r < 0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(r) < 1) {
    const double as = 1 - r * r;
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4 - hk) / 8;
    const double d = (12 - hk) / 80;
    double asr = -(bs / as + hk) / 2;
    if (asr > -100) bvn = a * std::exp(asr) * (1 - c * (bs - as) * (1 - d * bs) / 3 + c * d * as * as);
    if (hk > -100) {
      const double b = std::sqrt(bs);
      const double sp = std::sqrt(kTwoPi) * normal_cdf(-b / a);
      bvn -= std::exp(-hk / 2) * sp * b * (1 - c * bs * (1 - d * bs) / 3);
    }
    a /= 2;
    const double integral = for_nodes([&](double t) {
      const double xs = (a * t) * (a * t);
      const double e = -(bs / xs + hk) / 2;
      if (e <= -100) return 0.0;
      const double sp = 1 + c * xs * (1 + 5 * d * xs);
      const double rs = std::sqrt(1 - xs);
      const double ep = std::exp(-(hk / 2) * xs / ((1 + rs) * (1 + rs))) / rs;
      return std::exp(e) * (sp - ep);
    });
    bvn = (a * integral - bvn) / kTwoPi;
  }
  if (r > 0) {
    bvn += normal_cdf(-std::max(h, k));
  } else if (h >= k) {
    bvn = -bvn;
  } else {
    const double l = h < 0 ? normal_cdf(k) - normal_cdf(h) : normal_cdf(-h) - normal_cdf(-k);
    bvn = l - bvn;
  }
  return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (p <= 0) return -std::numeric_limits<double>::infinity();
  if (p >= 1) return std::numeric_limits<double>::infinity();
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double bivariate_normal_cdf(double h, double k, double rho) { return upper(-h, -k, rho); }

}  // namespace sbs::stats
