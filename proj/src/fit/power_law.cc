// Copyright 2026 The Scaling Lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <string>

#include "scaling_lab/errors.h"
#include "scaling_lab/law_fit.h"

namespace scaling_lab::fit {

PowerLawFit fit_power_law(std::span<const XY> points) {
  if (points.size() < 2) {
    throw DegenerateData("insufficient points for a power-law fit (got " +
                         std::to_string(points.size()) + ", need 2)");
  }
  for (const XY& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
      throw InvalidArgument("power-law fit needs positive x and y (got x=" +
                            std::to_string(p.x) + ", y=" + std::to_string(p.y) + ")");
    }
  }
  const bool all_x_equal = std::all_of(points.begin(), points.end(),
                                       [&](const XY& p) { return p.x == points[0].x; });
  if (all_x_equal) throw DegenerateData("power-law fit is degenerate: all x are equal");

  const double count = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const XY& p : points) {
    mean_x += std::log(p.x);
    mean_y += std::log(p.y);
  }
  mean_x /= count;
  mean_y /= count;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const XY& p : points) {
    const double dx = std::log(p.x) - mean_x;
    const double dy = std::log(p.y) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  PowerLawFit fit;
  fit.alpha = sxy / sxx;
  const double intercept = mean_y - fit.alpha * mean_x;
  fit.beta = std::exp(intercept);
  fit.n_points = points.size();

  double ss_res = 0.0;
  for (const XY& p : points) {
    const double r = std::log(p.y) - (intercept + fit.alpha * std::log(p.x));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double eval_power_law(const PowerLawFit& fit, double x) {
  if (!(x > 0.0)) {
    throw InvalidArgument("power law evaluated at non-positive x=" + std::to_string(x));
  }
  return fit.beta * std::pow(x, fit.alpha);
}

}  // namespace scaling_lab::fit
