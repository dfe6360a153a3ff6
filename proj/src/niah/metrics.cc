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
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "scaling_lab/errors.h"
#include "scaling_lab/niah.h"

namespace scaling_lab::niah {
namespace {

std::size_t column_of(const NiahGrid& grid, double length) {
  auto it = std::find(grid.lengths.begin(), grid.lengths.end(), length);
  if (it == grid.lengths.end()) {
    throw InvalidArgument("context length " + std::to_string(length) + " is not in the grid");
  }
  return static_cast<std::size_t>(it - grid.lengths.begin());
}

void check_weights(const NiahGrid& grid, const WeightMap& w) {
  if (w.weights.rows() != grid.cells.rows() || w.weights.cols() != grid.cells.cols()) {
    throw ShapeMismatch("weight map is " + std::to_string(w.weights.rows()) + "x" +
                        std::to_string(w.weights.cols()) + " but the grid is " +
                        std::to_string(grid.cells.rows()) + "x" +
                        std::to_string(grid.cells.cols()));
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (text.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("grid csv line " + std::to_string(line) + ": '" + text +
                     "' is not a number");
  }
}

}  // namespace

ValueRange value_range(Units units) {
  return units == Units::kPercent ? ValueRange{0.0, 100.0} : ValueRange{1.0, 10.0};
}

double default_threshold(Units units) {
  const ValueRange r = value_range(units);
  return 0.5 * (r.lo + r.hi);
}

void validate(const NiahGrid& grid) {
  if (grid.depths.empty() || grid.lengths.empty()) {
    throw ShapeMismatch("grid needs at least one depth and one length");
  }
  if (grid.cells.rows() != grid.depths.size() || grid.cells.cols() != grid.lengths.size()) {
    throw ShapeMismatch("grid cells do not match depths x lengths");
  }
  if (!std::is_sorted(grid.depths.begin(), grid.depths.end()) ||
      !std::is_sorted(grid.lengths.begin(), grid.lengths.end())) {
    throw InvalidArgument("grid depths and lengths must be ascending");
  }
  const ValueRange r = value_range(grid.units);
  for (double v : grid.cells.data()) {
    if (!(v >= r.lo && v <= r.hi)) {
      throw InvalidArgument("grid value " + std::to_string(v) + " outside [" +
                            std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
  }
}

NiahGrid read_grid_csv(std::istream& in, Units units) {
  NiahGrid grid;
  grid.units = units;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (grid.lengths.empty()) {
      if (fields.size() < 2) throw ParseError("grid csv header needs at least one length");
      for (std::size_t i = 1; i < fields.size(); ++i) {
        grid.lengths.push_back(parse_number(fields[i], line_no));
      }
      continue;
    }
    if (fields.size() != grid.lengths.size() + 1) {
      throw ParseError("grid csv row " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(grid.lengths.size() + 1));
    }
    grid.depths.push_back(parse_number(fields[0], line_no));
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) values.push_back(parse_number(fields[i], line_no));
    rows.push_back(std::move(values));
  }
  if (grid.lengths.empty() || rows.empty()) throw ParseError("grid csv has no data rows");
  grid.cells = Matrix(rows.size(), grid.lengths.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) grid.cells(r, c) = rows[r][c];
  }
  validate(grid);
  return grid;
}

NiahGrid load_grid_csv(const std::string& path, Units units) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid csv " + path);
  return read_grid_csv(in, units);
}

void write_grid_csv(std::ostream& out, const NiahGrid& grid) {
  out << std::setprecision(17) << "depth\\length";
  for (double l : grid.lengths) out << ',' << l;
  out << '\n';
  for (std::size_t r = 0; r < grid.depths.size(); ++r) {
    out << grid.depths[r];
    for (std::size_t c = 0; c < grid.lengths.size(); ++c) out << ',' << grid.cells(r, c);
    out << '\n';
  }
}

double acc_at_length(const NiahGrid& grid, double length) {
  validate(grid);
  const std::size_t col = column_of(grid, length);
  double sum = 0.0;
  for (std::size_t r = 0; r < grid.depths.size(); ++r) sum += grid.cells(r, col);
  return sum / static_cast<double>(grid.depths.size());
}

double acc_leq_length(const NiahGrid& grid, double length) {
  validate(grid);
  if (length < grid.lengths.front()) {
    throw InvalidArgument("context length " + std::to_string(length) +
                          " is below the smallest grid length");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < grid.lengths.size() && grid.lengths[c] <= length; ++c) {
    for (std::size_t r = 0; r < grid.depths.size(); ++r) {
      sum += grid.cells(r, c);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

WeightMap build_weight_map(std::size_t n_depths, std::size_t n_lengths, double w_d0,
                           double alpha_d, double w_c0, double alpha_c) {
  if (n_depths == 0 || n_lengths == 0) throw ShapeMismatch("weight map needs a non-empty grid");
  if (!(w_d0 > 0.0) || !(w_c0 > 0.0)) throw InvalidArgument("weight bases must be positive");
  if (!(alpha_d > 1.0) || !(alpha_c > 1.0)) {
    throw InvalidArgument("geometric ratios alpha_d and alpha_c must exceed 1");
  }
  WeightMap map{w_d0, alpha_d, w_c0, alpha_c, Matrix(n_depths, n_lengths)};
  std::vector<double> wd(n_depths), wc(n_lengths);
  for (std::size_t i = 0; i < n_depths; ++i) wd[i] = w_d0 * std::pow(alpha_d, static_cast<double>(i));
  for (std::size_t j = 0; j < n_lengths; ++j) wc[j] = w_c0 * std::pow(alpha_c, static_cast<double>(j));
  double total = 0.0;
  for (std::size_t i = 0; i < n_depths; ++i) {
    for (std::size_t j = 0; j < n_lengths; ++j) {
      map.weights(i, j) = wd[i] * wc[j];
      total += map.weights(i, j);
    }
  }
  for (double& w : map.weights.data()) w /= total;
  return map;
}

double weighted_avg(const NiahGrid& grid, const WeightMap& weights) {
  validate(grid);
  check_weights(grid, weights);
  double sum = 0.0;
  auto w = weights.weights.data();
  auto v = grid.cells.data();
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * v[i];
  return sum;
}

double column_penalty(std::span<const int> column) {
  if (column.empty()) throw ShapeMismatch("penalty of an empty column");
  std::size_t ones = 0;
  std::size_t segments = 0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] != 0 && column[i] != 1) {
      throw InvalidArgument("penalty column entries must be 0 or 1, got " +
                            std::to_string(column[i]));
    }
    ones += static_cast<std::size_t>(column[i]);
    if (i == 0 || column[i] != column[i - 1]) ++segments;
  }
  if (ones == 0) return 0.0;
  if (ones == column.size()) return 1.0;
  return std::pow(2.0, (1.0 - static_cast<double>(segments)) / 2.0);
}

double niah_score(const NiahGrid& grid, double threshold, const WeightMap& weights) {
  validate(grid);
  check_weights(grid, weights);
  const ValueRange r = value_range(grid.units);
  if (!(threshold >= r.lo && threshold <= r.hi)) {
    throw InvalidArgument("threshold " + std::to_string(threshold) + " outside [" +
                          std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
  double score = 0.0;
  std::vector<int> flags(grid.depths.size());
  for (std::size_t c = 0; c < grid.lengths.size(); ++c) {
    double contribution = 0.0;
    for (std::size_t d = 0; d < grid.depths.size(); ++d) {
      flags[d] = grid.cells(d, c) >= threshold ? 1 : 0;
      contribution += weights.weights(d, c) * grid.cells(d, c);
    }
    score += column_penalty(flags) * contribution;
  }
  return score;
}

}  // namespace scaling_lab::niah
