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


#ifndef SCALING_LAB_NIAH_H_
#define SCALING_LAB_NIAH_H_

// Needle-in-a-haystack scoring over a depth x context-length grid.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scaling_lab/matrix.h"

namespace scaling_lab::niah {

enum class Units {
  kPercent,    // accuracies in [0, 100]
  kRawScore,   // judge scores in [1, 10]
};

struct ValueRange {
  double lo;
  double hi;
};
ValueRange value_range(Units units);
// Midpoint of the range: 50 for percentages, 5.5 for raw scores.
double default_threshold(Units units);

struct NiahGrid {
  std::vector<double> depths;   // percent, ascending; one per row
  std::vector<double> lengths;  // tokens, ascending; one per column
  Matrix cells;                 // depths x lengths
  Units units = Units::kPercent;
};

// Throws ShapeMismatch / InvalidArgument on violated invariants.
void validate(const NiahGrid& grid);

// CSV: header "depth\length,L1,L2,..." then "depth_pct,v,v,..." rows.
NiahGrid read_grid_csv(std::istream& in, Units units = Units::kPercent);
NiahGrid load_grid_csv(const std::string& path, Units units = Units::kPercent);
void write_grid_csv(std::ostream& out, const NiahGrid& grid);

double acc_at_length(const NiahGrid& grid, double length);
double acc_leq_length(const NiahGrid& grid, double length);

struct WeightMap {
  double w_d0 = 1.0;
  double alpha_d = 1.25;
  double w_c0 = 1.0;
  double alpha_c = 1.25;
  Matrix weights;  // depths x lengths, sums to one
};

WeightMap build_weight_map(std::size_t n_depths, std::size_t n_lengths,
                           double w_d0 = 1.0, double alpha_d = 1.25,
                           double w_c0 = 1.0, double alpha_c = 1.25);

double weighted_avg(const NiahGrid& grid, const WeightMap& weights);

// Column of 0/1 success flags: 0 with no success, 1 with all success,
// otherwise 2^((1 - segments) / 2) where segments counts maximal runs of
// equal values.
double column_penalty(std::span<const int> column);

// Cells >= threshold count as success. Each column's weighted contribution
// is scaled by that column's penalty.
double niah_score(const NiahGrid& grid, double threshold, const WeightMap& weights);

// Deterministic SVG heatmap, one <rect> per cell, green at the top of the
// value range and red at the bottom.
std::string render_heatmap(const NiahGrid& grid, const std::string& title = "");

// Linear red -> green ramp on [0, 1], "#rrggbb".
std::string heat_color(double fraction);
inline constexpr char kMidpointColor[] = "#808000";

}  // namespace scaling_lab::niah

#endif  // SCALING_LAB_NIAH_H_
