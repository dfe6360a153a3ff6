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


#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "scaling_lab/errors.h"
#include "scaling_lab/law_fit.h"
#include "scaling_lab/rng.h"

namespace fit = scaling_lab::fit;
using scaling_lab::arch::ArchKind;

TEST_CASE("noiseless power law is recovered") {
  std::vector<fit::XY> pts;
  for (int i = 0; i < 50; ++i) {
    const double x = std::pow(10.0, 15.0 + 0.1 * i);
    pts.push_back({x, 3.5 * std::pow(x, -0.08)});
  }
  const auto f = fit::fit_power_law(pts);
  CHECK(std::abs(f.alpha + 0.08) <= 1e-9);
  CHECK(std::abs(f.beta - 3.5) / 3.5 <= 1e-9);
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.n_points == 50);
}

TEST_CASE("two published points give back the published law") {
  const std::vector<fit::XY> pts{{1.0, 3.7087}, {10.0, 3.7087 * std::pow(10.0, -0.0798)}};
  const auto f = fit::fit_power_law(pts);
  CHECK(f.alpha == doctest::Approx(-0.0798).epsilon(1e-12));
  CHECK(f.beta == doctest::Approx(3.7087).epsilon(1e-12));
}

TEST_CASE("noisy recovery stays within five percent") {
  auto rng = scaling_lab::make_stream(scaling_lab::kDefaultSeed, 1);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<fit::XY> pts;
  for (int i = 0; i < 100; ++i) {
    const double x = std::pow(10.0, 15.0 + 0.06 * i);
    pts.push_back({x, 3.5 * std::pow(x, -0.08) * std::exp(noise(rng))});
  }
  CHECK(std::abs(fit::fit_power_law(pts).alpha + 0.08) / 0.08 <= 0.05);
}

TEST_CASE("degenerate fits are rejected") {
  const std::vector<fit::XY> one{{1.0, 2.0}};
  CHECK_THROWS_WITH_AS(fit::fit_power_law(one), doctest::Contains("insufficient points"),
                       scaling_lab::DegenerateData);
  const std::vector<fit::XY> same_x{{2.0, 1.0}, {2.0, 3.0}};
  CHECK_THROWS_AS(fit::fit_power_law(same_x), scaling_lab::DegenerateData);
  const std::vector<fit::XY> negative{{1.0, 1.0}, {2.0, -1.0}};
  CHECK_THROWS_AS(fit::fit_power_law(negative), scaling_lab::InvalidArgument);
  CHECK_THROWS_AS(fit::eval_power_law({-0.1, 1.0, 1.0, 2}, 0.0), scaling_lab::InvalidArgument);
}

TEST_CASE("envelope keeps the minimum per bin with deterministic ties") {
  std::vector<fit::LossPoint> pts{
      {"a", 1.0e18, 1e9, 2e8, 3.0},
      {"b", 1.01e18, 1e9, 1e8, 2.5},
      {"c", 1.02e18, 2e9, 5e7, 2.5},  // tie on loss, smaller N wins
      {"d", 1.0e19, 1e10, 1e8, 2.0},
  };
  const auto env = fit::compute_envelope(pts, 10);
  REQUIRE(env.size() == 2);
  CHECK(env[0].loss == 2.5);
  CHECK(env[0].n_at_min == 5e7);
  CHECK(env[1].loss == 2.0);
  CHECK(env[0].flops < env[1].flops);
  // Bin centre: first bin spans [1e18, 1e18 * 10^0.1).
  CHECK(env[0].flops == doctest::Approx(1e18 * std::pow(10.0, 0.05)));
}

TEST_CASE("envelope input order does not matter") {
  const auto runs = fit::synth_runs({fit::LossFamily{}, {1e8, 1e9}, 1e18, 1e20, 10, 0.01, 3});
  std::vector<fit::LossPoint> reversed(runs.rbegin(), runs.rend());
  CHECK(fit::compute_envelope(runs) == fit::compute_envelope(reversed));
}

TEST_CASE("envelope errors") {
  CHECK_THROWS_AS(fit::compute_envelope(std::vector<fit::LossPoint>{}), scaling_lab::DegenerateData);
  const std::vector<fit::LossPoint> pts{{"a", 1e18, 1, 1, 1}};
  CHECK_THROWS_AS(fit::compute_envelope(pts, 0), scaling_lab::InvalidArgument);
  const std::vector<fit::LossPoint> bad{{"a", -1.0, 1, 1, 1}};
  CHECK_THROWS_AS(fit::compute_envelope(bad), scaling_lab::InvalidArgument);
}

TEST_CASE("synthetic runs are deterministic and noiseless loss decreases") {
  fit::SynthConfig cfg;
  cfg.model_sizes = {1e8, 1e9};
  cfg.seed = 42;
  cfg.noise_sigma = 0.02;
  const auto a = fit::synth_runs(cfg);
  const auto b = fit::synth_runs(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].loss == b[i].loss);
  cfg.noise_sigma = 0.0;
  const auto clean = fit::synth_runs(cfg);
  for (std::size_t i = 1; i < clean.size(); ++i) {
    if (clean[i].run_id == clean[i - 1].run_id) CHECK(clean[i].loss < clean[i - 1].loss);
  }
  for (const auto& p : clean) CHECK(p.flops == doctest::Approx(6.0 * p.params * p.tokens));
}

TEST_CASE("synth rejects invalid constants") {
  fit::SynthConfig cfg;
  cfg.model_sizes = {1e8};
  cfg.family.size_exponent = 0.0;
  CHECK_THROWS_AS(fit::synth_runs(cfg), scaling_lab::InvalidArgument);
  cfg.family.size_exponent = 0.3;
  cfg.model_sizes.clear();
  CHECK_THROWS_AS(fit::synth_runs(cfg), scaling_lab::InvalidArgument);
}

TEST_CASE("brute force optimum matches an independent scan") {
  fit::SynthConfig cfg;
  cfg.model_sizes = {7e7, 1.6e8, 4.1e8, 1e9, 3e9, 7e9};
  const auto truth = fit::brute_force_optimum(cfg);
  // Independent scan: closed-form loss, own grid, own regression.
  const double E = 1.69, A = 406.4, B = 410.7, al = 0.34, be = 0.28;
  std::vector<double> lx, ly;
  for (int k = 0; k <= 100; ++k) {
    const double c = std::pow(10.0, 17.0 + k / 20.0);
    double best = std::numeric_limits<double>::infinity(), best_n = 0;
    for (double n : cfg.model_sizes) {
      const double loss = E + A / std::pow(n, al) + B / std::pow(c / (6 * n), be);
      if (loss < best) {
        best = loss;
        best_n = n;
      }
    }
    lx.push_back(std::log(c));
    ly.push_back(std::log(best_n));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  CHECK(std::abs(truth.a - sxy / sxx) <= 1e-6);
  CHECK(std::abs(truth.a + truth.b - 1.0) <= 1e-9);
}

TEST_CASE("allocation pipeline recovers the brute-force exponents") {
  fit::SynthConfig cfg;
  cfg.model_sizes = {7e7, 1.6e8, 4.1e8, 1e9, 3e9, 7e9};
  const auto env = fit::compute_envelope(fit::synth_runs(cfg));
  const auto alloc = fit::fit_allocation(env);
  const auto truth = fit::brute_force_optimum(cfg);
  CHECK(std::abs(alloc.n_opt.alpha - truth.a) <= 0.05);
  CHECK(std::abs(alloc.d_opt.alpha - truth.b) <= 0.05);
  CHECK(fit::fit_loss_envelope(env).alpha < 0.0);
}

TEST_CASE("published laws") {
  const auto& laws = fit::table2_laws();
  CHECK(laws.size() == 12);
  CHECK(fit::eval_power_law(fit::table2_law(ArchKind::kSoftmaxAttention, fit::LawQuantity::kLoss).fit,
                            1.0) == 3.7087);
  const auto& n = fit::table2_law(ArchKind::kHgrn2, fit::LawQuantity::kNOpt);
  CHECK(n.fit.beta == 2.66e8);
  CHECK(n.fit.alpha == 0.6427);
  CHECK(n.beta_text == "2.66e8");
  CHECK(fit::table2_law(ArchKind::kTnl, fit::LawQuantity::kDOpt).alpha_text == "0.4684");
}
