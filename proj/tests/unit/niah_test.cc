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

#include <random>
#include <regex>
#include <sstream>
#include <vector>

#include "scaling_lab/errors.h"
#include "scaling_lab/niah.h"

namespace niah = scaling_lab::niah;
using scaling_lab::Matrix;

namespace {

niah::NiahGrid grid(std::vector<std::vector<double>> rows, std::vector<double> lengths = {},
                    niah::Units units = niah::Units::kPercent) {
  niah::NiahGrid g;
  g.units = units;
  g.cells = Matrix(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    g.depths.push_back(100.0 * static_cast<double>(r) / std::max<std::size_t>(1, rows.size() - 1));
    for (std::size_t c = 0; c < rows[r].size(); ++c) g.cells(r, c) = rows[r][c];
  }
  if (lengths.empty()) {
    for (std::size_t c = 0; c < rows[0].size(); ++c) lengths.push_back(1000.0 * (c + 1));
  }
  g.lengths = lengths;
  return g;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("acc at and up to a length") {
  const auto g = grid({{100, 0}, {100, 0}});
  CHECK(niah::acc_at_length(g, 1000) == 100.0);
  CHECK(niah::acc_at_length(g, 2000) == 0.0);
  CHECK(niah::acc_leq_length(g, 1000) == 100.0);
  CHECK(niah::acc_leq_length(g, 2000) == 50.0);
  CHECK(niah::acc_leq_length(g, 1500) == 100.0);
  CHECK(niah::acc_at_length(grid({{0}, {100}}), 1000) == 50.0);
  CHECK_THROWS_AS(niah::acc_at_length(g, 3000), scaling_lab::InvalidArgument);
  CHECK_THROWS_AS(niah::acc_leq_length(g, 10), scaling_lab::InvalidArgument);
}

TEST_CASE("weight map hand example") {
  const auto w = niah::build_weight_map(2, 2, 1.0, 2.0, 1.0, 2.0);
  CHECK(w.weights(0, 0) == doctest::Approx(1.0 / 9).epsilon(1e-15));
  CHECK(w.weights(0, 1) == doctest::Approx(2.0 / 9).epsilon(1e-15));
  CHECK(w.weights(1, 0) == doctest::Approx(2.0 / 9).epsilon(1e-15));
  CHECK(w.weights(1, 1) == doctest::Approx(4.0 / 9).epsilon(1e-15));
}

TEST_CASE("weight map invariants") {
  const auto w = niah::build_weight_map(5, 7, 1.0, 1.25, 2.0, 1.5);
  double sum = 0.0;
  for (double v : w.weights.data()) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      if (i > 0) CHECK(w.weights(i, j) / w.weights(i - 1, j) == doctest::Approx(1.25).epsilon(1e-12));
      if (j > 0) CHECK(w.weights(i, j) / w.weights(i, j - 1) == doctest::Approx(1.5).epsilon(1e-12));
    }
  }
  const auto sym = niah::build_weight_map(4, 4, 1.0, 1.3, 1.0, 1.3);
  CHECK(sym.weights == sym.weights.transposed());
  const auto flat = niah::build_weight_map(6, 6, 1.0, 1.0 + 1e-9, 1.0, 1.0 + 1e-9);
  for (double v : flat.weights.data()) CHECK(std::abs(v - 1.0 / 36) <= 1e-6);
  CHECK_THROWS_AS(niah::build_weight_map(2, 2, 1.0, 1.0, 1.0, 2.0), scaling_lab::InvalidArgument);
  CHECK_THROWS_AS(niah::build_weight_map(2, 2, 0.0, 2.0, 1.0, 2.0), scaling_lab::InvalidArgument);
  CHECK_THROWS_AS(niah::build_weight_map(0, 2), scaling_lab::ShapeMismatch);
}

TEST_CASE("weighted average") {
  const auto w = niah::build_weight_map(2, 2, 1.0, 2.0, 1.0, 2.0);
  CHECK(std::abs(niah::weighted_avg(grid({{100, 0}, {0, 100}}), w) - 500.0 / 9.0) <= 1e-9);
  CHECK(niah::weighted_avg(grid({{100, 100}, {100, 100}}), w) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(niah::weighted_avg(grid({{0, 0}, {0, 0}}), w) == 0.0);
  CHECK_THROWS_AS(niah::weighted_avg(grid({{1, 2, 3}, {1, 2, 3}}), w), scaling_lab::ShapeMismatch);
}

TEST_CASE("column penalty") {
  CHECK(niah::column_penalty(std::vector<int>{1, 1, 1, 1}) == 1.0);
  CHECK(niah::column_penalty(std::vector<int>{0, 0, 0}) == 0.0);
  CHECK(niah::column_penalty(std::vector<int>{1, 1, 0, 1}) == 0.5);
  CHECK(niah::column_penalty(std::vector<int>{0, 1}) == std::pow(2.0, -0.5));
  CHECK(niah::column_penalty(std::vector<int>{1, 0, 1, 0, 1}) == 0.25);
  // Depends only on the segment count.
  CHECK(niah::column_penalty(std::vector<int>{0, 0, 1, 1, 1}) ==
        niah::column_penalty(std::vector<int>{1, 0, 0, 0, 0}));
  CHECK(niah::column_penalty(std::vector<int>{1, 0, 1}) == niah::column_penalty(std::vector<int>{0, 1, 0}));
  CHECK_THROWS_AS(niah::column_penalty(std::vector<int>{1, 2}), scaling_lab::InvalidArgument);
}

TEST_CASE("niah score") {
  const auto w = niah::build_weight_map(3, 2);
  const auto all = grid({{100, 100}, {100, 100}, {100, 100}});
  CHECK(niah::niah_score(all, 50, w) == doctest::Approx(niah::weighted_avg(all, w)).epsilon(1e-15));
  CHECK(niah::niah_score(grid({{0, 0}, {0, 0}, {0, 0}}), 50, w) == 0.0);
  // Column 0 patterned [1, 0, 1] at 100, column 1 all zero.
  const auto g = grid({{100, 0}, {0, 0}, {100, 0}});
  const double mass = w.weights(0, 0) + w.weights(2, 0);
  CHECK(niah::niah_score(g, 50, w) == doctest::Approx(0.5 * mass * 100.0).epsilon(1e-14));
  CHECK(niah::niah_score(g, 50, w) <= niah::weighted_avg(g, w));
  CHECK_THROWS_AS(niah::niah_score(g, 101, w), scaling_lab::InvalidArgument);
}

TEST_CASE("raw score units") {
  auto g = grid({{10, 1}, {10, 1}}, {}, niah::Units::kRawScore);
  CHECK(niah::default_threshold(niah::Units::kRawScore) == 5.5);
  CHECK(niah::default_threshold(niah::Units::kPercent) == 50.0);
  CHECK(niah::acc_at_length(g, 1000) == 10.0);
  g.cells(0, 0) = 0.5;
  CHECK_THROWS_AS(niah::validate(g), scaling_lab::InvalidArgument);
}

TEST_CASE("monotone in every cell") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 90.0);
  auto g = grid({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  for (double& v : g.cells.data()) v = u(rng);
  const auto w = niah::build_weight_map(3, 3);
  for (std::size_t i = 0; i < 9; ++i) {
    auto h = g;
    h.cells.data()[i] += 10.0;
    CHECK(niah::weighted_avg(h, w) >= niah::weighted_avg(g, w));
    for (double l : g.lengths) {
      CHECK(niah::acc_at_length(h, l) >= niah::acc_at_length(g, l));
      CHECK(niah::acc_leq_length(h, l) >= niah::acc_leq_length(g, l));
    }
  }
}

TEST_CASE("grid csv parsing") {
  std::istringstream in("depth\\length,1000,2000\n0,100,50\n100,90,10\n");
  const auto g = niah::read_grid_csv(in);
  CHECK(g.lengths == std::vector<double>{1000, 2000});
  CHECK(g.depths == std::vector<double>{0, 100});
  CHECK(g.cells(1, 1) == 10);
  std::ostringstream out;
  niah::write_grid_csv(out, g);
  std::istringstream back(out.str());
  CHECK(niah::read_grid_csv(back).cells == g.cells);
  std::istringstream ragged("depth\\length,1000,2000\n0,100\n");
  CHECK_THROWS_WITH_AS(niah::read_grid_csv(ragged), doctest::Contains("row 2"), scaling_lab::ParseError);
  std::istringstream junk("depth\\length,1000\n0,abc\n");
  CHECK_THROWS_AS(niah::read_grid_csv(junk), scaling_lab::ParseError);
}

TEST_CASE("heatmap") {
  CHECK(niah::heat_color(0.5) == niah::kMidpointColor);
  CHECK(niah::heat_color(1.0) == "#00ff00");
  CHECK(niah::heat_color(0.0) == "#ff0000");
  const std::string one = niah::render_heatmap(grid({{100}}));
  CHECK(count(one, "class=\"cell\"") == 1);
  CHECK(count(one, "fill=\"#00ff00\" class=\"cell\"") == 1);
  const auto g = grid({{50, 0}, {100, 20}});
  CHECK(niah::render_heatmap(g) == niah::render_heatmap(g));
  CHECK(niah::render_heatmap(g).find(std::string("fill=\"") + niah::kMidpointColor) != std::string::npos);
  const auto raw = grid({{5.5}}, {}, niah::Units::kRawScore);
  CHECK(niah::render_heatmap(raw).find(niah::kMidpointColor) != std::string::npos);
}

TEST_CASE("heatmap is well formed for random grids") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> val(0.0, 100.0);
  const std::regex tag("<(/?)([a-z]+)[^>]*?(/?)>");
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    std::vector<std::vector<double>> cells(rows, std::vector<double>(cols));
    for (auto& r : cells) for (double& v : r) v = val(rng);
    const std::string svg = niah::render_heatmap(grid(cells), "trial <" + std::to_string(trial) + ">");
    CHECK(count(svg, "class=\"cell\"") == static_cast<std::size_t>(rows * cols));
    // Tag balance check over the body.
    std::vector<std::string> stack;
    bool ok = true;
    const std::string body = svg.substr(svg.find("<svg"));
    for (auto it = std::sregex_iterator(body.begin(), body.end(), tag); it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      if (m[3] == "/") continue;
      if (m[1] == "/") {
        ok = ok && !stack.empty() && stack.back() == m[2];
        if (!stack.empty()) stack.pop_back();
      } else {
        stack.push_back(m[2]);
      }
    }
    CHECK(ok);
    CHECK(stack.empty());
  }
}
