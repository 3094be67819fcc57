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

#ifndef SCALECHECK_POWERLAW_FIT_H_
#define SCALECHECK_POWERLAW_FIT_H_

#include <cstddef>
#include <span>
#include <vector>

namespace scalecheck {

// One observation of y against z for a relation y ∝ z^κ.
struct LogLogPoint {
  double z = 0.0;
  double y = 0.0;
};

using LogLogPoints = std::vector<LogLogPoint>;

// Least-squares line log y = exponent * log z + intercept, in `log_base`.
// epsilon is the RMS residual per point in the same base.
struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double epsilon = 0.0;
  std::size_t n_points = 0;
  double log_base = 10.0;
};

// Throws Error(kDegenerateFit) for fewer than two points or a single
// distinct z, Error(kNonpositiveValue) for any coordinate <= 0.
PowerLawFit fit_power_law(std::span<const LogLogPoint> points,
                          double log_base = 10.0);

// Drops points with a non-positive coordinate; returns how many were dropped.
std::size_t retain_positive(LogLogPoints& points);

}  // namespace scalecheck

#endif  // SCALECHECK_POWERLAW_FIT_H_
