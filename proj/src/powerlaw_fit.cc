// Copyright 2026 The scalecheck Authors.
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

#include "scalecheck/powerlaw_fit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalecheck/error.h"

namespace scalecheck {

PowerLawFit fit_power_law(std::span<const LogLogPoint> points,
                          double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0) {
    throw Error(ErrorCode::kInvalidParam, "log base must be positive and != 1");
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::kDegenerateFit,
                "power-law fit needs at least 2 points, got " +
                    std::to_string(points.size()));
  }
  const double inv_log_base = 1.0 / std::log(log_base);
  std::vector<double> xs(points.size());
  std::vector<double> ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.z > 0.0) || !(p.y > 0.0)) {
      throw Error(ErrorCode::kNonpositiveValue,
                  "power-law fit needs strictly positive coordinates");
    }
    xs[i] = std::log(p.z) * inv_log_base;
    ys[i] = std::log(p.y) * inv_log_base;
  }
  const double n = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (ys[i] - mean_y);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::kDegenerateFit,
                "power-law fit needs at least 2 distinct z values");
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = mean_y - fit.exponent * mean_x;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.exponent * xs[i] + fit.intercept);
    sse += r * r;
  }
  fit.epsilon = std::sqrt(sse / n);
  fit.n_points = points.size();
  fit.log_base = log_base;
  return fit;
}

std::size_t retain_positive(LogLogPoints& points) {
  const auto before = points.size();
  std::erase_if(points,
                [](const LogLogPoint& p) { return !(p.z > 0.0 && p.y > 0.0); });
  return before - points.size();
}

}  // namespace scalecheck
