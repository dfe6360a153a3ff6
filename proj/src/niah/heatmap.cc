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
#include <cstdio>
#include <sstream>

#include "scaling_lab/niah.h"
#include "scaling_lab/svg.h"

namespace scaling_lab::niah {
namespace {

constexpr double kCanvasWidth = 800.0;
constexpr double kCanvasHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kTop = 50.0;
constexpr double kRight = 30.0;
constexpr double kBottom = 70.0;

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string heat_color(double fraction) {
  const double f = std::clamp(fraction, 0.0, 1.0);
  const int red = static_cast<int>(std::floor(255.0 * (1.0 - f) + 0.5));
  const int green = static_cast<int>(std::floor(255.0 * f + 0.5));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x00", red, green);
  return buf;
}

std::string render_heatmap(const NiahGrid& grid, const std::string& title) {
  validate(grid);
  const ValueRange range = value_range(grid.units);
  const std::size_t rows = grid.depths.size();
  const std::size_t cols = grid.lengths.size();
  const double cell_w = (kCanvasWidth - kLeft - kRight) / static_cast<double>(cols);
  const double cell_h = (kCanvasHeight - kTop - kBottom) / static_cast<double>(rows);

  svg::Document doc(kCanvasWidth, kCanvasHeight);
  if (!title.empty()) doc.text(kCanvasWidth / 2, 28, title, "middle", 16);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = grid.cells(r, c);
      const double fraction = (v - range.lo) / (range.hi - range.lo);
      doc.rect(kLeft + static_cast<double>(c) * cell_w, kTop + static_cast<double>(r) * cell_h,
               cell_w, cell_h, heat_color(fraction), "cell", compact(v));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    doc.text(kLeft - 8, kTop + (static_cast<double>(r) + 0.5) * cell_h + 4,
             compact(grid.depths[r]) + "%", "end", 11);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    doc.text(kLeft + (static_cast<double>(c) + 0.5) * cell_w, kCanvasHeight - kBottom + 18,
             compact(grid.lengths[c]), "middle", 11);
  }
  doc.text(kLeft + (kCanvasWidth - kLeft - kRight) / 2, kCanvasHeight - 20, "context length",
           "middle", 13);
  doc.text(20, kTop + (kCanvasHeight - kTop - kBottom) / 2, "depth", "middle", 13);
  return doc.str();
}

}  // namespace scaling_lab::niah
