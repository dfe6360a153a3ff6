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
#include <optional>
#include <tuple>
#include <vector>

#include "scaling_lab/errors.h"
#include "scaling_lab/law_fit.h"

namespace scaling_lab::fit {
namespace {

// Grid-aligned FLOPs values sit on bin edges; absorb log10 round-off so they
// land in the bin they start.
constexpr double kEdgeSlack = 1e-9;

bool better(const LossPoint& a, const LossPoint& b) {
  return std::tie(a.loss, a.params, a.tokens, a.run_id) <
         std::tie(b.loss, b.params, b.tokens, b.run_id);
}

}  // namespace

std::vector<EnvelopePoint> compute_envelope(std::span<const LossPoint> points,
                                            std::size_t bins_per_decade) {
  if (points.empty()) throw DegenerateData("envelope of an empty point set");
  if (bins_per_decade == 0) throw InvalidArgument("bins_per_decade must be >= 1");
  for (const LossPoint& p : points) {
    if (!(p.flops > 0.0) || !(p.loss > 0.0)) {
      throw InvalidArgument("envelope needs positive flops and loss (run " + p.run_id + ")");
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(
      points.begin(), points.end(),
      [](const LossPoint& a, const LossPoint& b) { return a.flops < b.flops; });
  const double lo = std::log10(lo_it->flops);
  const double per = static_cast<double>(bins_per_decade);
  const double span = std::log10(hi_it->flops) - lo;
  const std::size_t bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span * per - kEdgeSlack)));

  std::vector<std::optional<LossPoint>> best(bins);
  for (const LossPoint& p : points) {
    const double pos = (std::log10(p.flops) - lo) * per + kEdgeSlack;
    const std::size_t index = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
    if (!best[index] || better(p, *best[index])) best[index] = p;
  }

  std::vector<EnvelopePoint> envelope;
  for (std::size_t i = 0; i < bins; ++i) {
    if (!best[i]) continue;
    EnvelopePoint e;
    e.flops = std::pow(10.0, lo + (static_cast<double>(i) + 0.5) / per);
    e.loss = best[i]->loss;
    e.n_at_min = best[i]->params;
    e.d_at_min = best[i]->tokens;
    envelope.push_back(e);
  }
  return envelope;
}

AllocationFit fit_allocation(std::span<const EnvelopePoint> envelope) {
  if (envelope.size() < 2) {
    throw DegenerateData("insufficient points: allocation fit needs at least 2 envelope points, got " +
                         std::to_string(envelope.size()));
  }
  std::vector<XY> n_points, d_points;
  for (const EnvelopePoint& e : envelope) {
    n_points.push_back({e.flops, e.n_at_min});
    d_points.push_back({e.flops, e.d_at_min});
  }
  return {fit_power_law(n_points), fit_power_law(d_points)};
}

PowerLawFit fit_loss_envelope(std::span<const EnvelopePoint> envelope) {
  if (envelope.size() < 2) {
    throw DegenerateData("insufficient points: L(C) fit needs at least 2 envelope points, got " +
                         std::to_string(envelope.size()));
  }
  std::vector<XY> points;
  for (const EnvelopePoint& e : envelope) points.push_back({e.flops, e.loss});
  return fit_power_law(points);
}

}  // namespace scaling_lab::fit
