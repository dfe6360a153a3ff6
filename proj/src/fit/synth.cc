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


#include <cmath>
#include <random>
#include <string>

#include "scaling_lab/errors.h"
#include "scaling_lab/law_fit.h"
#include "scaling_lab/rng.h"

namespace scaling_lab::fit {
namespace {

void validate(const SynthConfig& c) {
  const LossFamily& f = c.family;
  if (!(f.irreducible >= 0.0) || !(f.size_coef > 0.0) || !(f.data_coef > 0.0) ||
      !(f.size_exponent > 0.0) || !(f.data_exponent > 0.0)) {
    throw InvalidArgument("loss family needs E >= 0 and A, B, alpha_n, beta_d > 0");
  }
  if (c.model_sizes.empty()) throw InvalidArgument("at least one model size is required");
  for (double n : c.model_sizes) {
    if (!(n > 0.0)) throw InvalidArgument("model sizes must be positive");
  }
  if (!(c.flops_min > 0.0) || !(c.flops_max > c.flops_min)) {
    throw InvalidArgument("flops grid needs 0 < flops_min < flops_max");
  }
  if (c.points_per_decade == 0) throw InvalidArgument("points_per_decade must be >= 1");
  if (!(c.noise_sigma >= 0.0)) throw InvalidArgument("noise sigma must be >= 0");
}

}  // namespace

double LossFamily::loss(double params, double tokens) const {
  return irreducible + size_coef / std::pow(params, size_exponent) +
         data_coef / std::pow(tokens, data_exponent);
}

double training_flops(double params, double tokens) { return 6.0 * params * tokens; }

std::vector<double> flops_grid(const SynthConfig& config) {
  validate(config);
  std::vector<double> grid;
  const double lo = std::log10(config.flops_min);
  const double hi = std::log10(config.flops_max);
  const double step = 1.0 / static_cast<double>(config.points_per_decade);
  for (std::size_t k = 0;; ++k) {
    const double e = lo + static_cast<double>(k) * step;
    if (e > hi + 1e-12) break;
    grid.push_back(std::pow(10.0, e));
  }
  return grid;
}

std::vector<LossPoint> synth_runs(const SynthConfig& config) {
  const std::vector<double> grid = flops_grid(config);
  std::vector<LossPoint> points;
  for (std::size_t i = 0; i < config.model_sizes.size(); ++i) {
    const double n = config.model_sizes[i];
    std::mt19937_64 rng = make_stream(config.seed, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double c : grid) {
      LossPoint p;
      p.run_id = "synth-" + std::to_string(i);
      p.params = n;
      p.flops = c;
      p.tokens = c / (6.0 * n);
      p.loss = config.family.loss(n, p.tokens);
      if (config.noise_sigma > 0.0) p.loss *= std::exp(config.noise_sigma * normal(rng));
      points.push_back(std::move(p));
    }
  }
  return points;
}

GroundTruth brute_force_optimum(const SynthConfig& config) {
  GroundTruth truth;
  truth.flops = flops_grid(config);
  std::vector<XY> n_points, d_points;
  for (double c : truth.flops) {
    double best_n = 0.0;
    double best_loss = 0.0;
    for (double n : config.model_sizes) {
      const double loss = config.family.loss(n, c / (6.0 * n));
      if (best_n == 0.0 || loss < best_loss || (loss == best_loss && n < best_n)) {
        best_n = n;
        best_loss = loss;
      }
    }
    truth.n_opt.push_back(best_n);
    truth.d_opt.push_back(c / (6.0 * best_n));
    n_points.push_back({c, best_n});
    d_points.push_back({c, c / (6.0 * best_n)});
  }
  truth.a = fit_power_law(n_points).alpha;
  truth.b = fit_power_law(d_points).alpha;
  return truth;
}

}  // namespace scaling_lab::fit
