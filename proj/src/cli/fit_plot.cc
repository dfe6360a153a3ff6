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


#include "scaling_lab/fit_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>
#include <vector>

#include "scaling_lab/errors.h"
#include "scaling_lab/svg.h"

namespace scaling_lab::cli {
namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kLineSamples = 64;

struct Axis {
  double lo;  // log10
  double hi;

  double frac(double v) const { return (std::log10(v) - lo) / (hi - lo); }
};

Axis padded(double min_v, double max_v) {
  double lo = std::log10(min_v);
  double hi = std::log10(max_v);
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.03 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string law_label(const fit::PublishedLaw& law) {
  return law.beta_text + "·C^" + law.alpha_text;
}

std::string render_fit_plot(std::span<const fit::LossPoint> points,
                            std::span<const fit::EnvelopePoint> envelope,
                            const fit::PowerLawFit& loss_fit,
                            const std::optional<PlotOverlay>& overlay) {
  if (points.empty()) throw InvalidArgument("plot needs at least one point");
  double x_min = std::numeric_limits<double>::infinity(), x_max = 0.0;
  double y_min = std::numeric_limits<double>::infinity(), y_max = 0.0;
  auto include = [&](double x, double y) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  };
  for (const auto& p : points) include(p.flops, p.loss);
  for (const auto& e : envelope) include(e.flops, e.loss);
  const double fx_lo = x_min, fx_hi = x_max;
  auto sample = [&](auto&& f) {
    std::vector<std::pair<double, double>> xs;
    for (int i = 0; i <= kLineSamples; ++i) {
      const double t = static_cast<double>(i) / kLineSamples;
      const double x = std::pow(10.0, std::log10(fx_lo) + t * (std::log10(fx_hi) - std::log10(fx_lo)));
      xs.emplace_back(x, f(x));
    }
    return xs;
  };
  const auto fitted = sample([&](double x) { return fit::eval_power_law(loss_fit, x); });
  std::vector<std::pair<double, double>> reference;
  if (overlay) {
    const fit::PublishedLaw& law = fit::table2_law(overlay->kind, fit::LawQuantity::kLoss);
    reference = sample([&](double x) { return fit::eval_power_law(law.fit, x / overlay->flops_unit); });
  }
  for (const auto& [x, y] : fitted) include(x, y);
  for (const auto& [x, y] : reference) include(x, y);

  const Axis ax = padded(x_min, x_max);
  const Axis ay = padded(y_min, y_max);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.frac(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ay.frac(y)) * ph; };
  auto project = [&](const std::vector<std::pair<double, double>>& line) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [x, y] : line) out.emplace_back(px(x), py(y));
    return out;
  };

  svg::Document doc(kWidth, kHeight);
  doc.rect(kLeft, kTop, pw, ph, "#fafafa", "frame");
  for (int k = static_cast<int>(std::ceil(ax.lo)); k <= static_cast<int>(std::floor(ax.hi)); ++k) {
    const double x = std::pow(10.0, k);
    doc.line(px(x), kTop, px(x), kTop + ph, "#dddddd");
    doc.text(px(x), kTop + ph + 18, "1e" + std::to_string(k), "middle", 11);
  }
  for (int k = static_cast<int>(std::floor(ay.lo)); k <= static_cast<int>(std::ceil(ay.hi)); ++k) {
    for (int m = 1; m <= 9; ++m) {
      const double y = m * std::pow(10.0, k);
      const double ly = std::log10(y);
      if (ly < ay.lo || ly > ay.hi) continue;
      doc.line(kLeft, py(y), kLeft + pw, py(y), m == 1 ? "#cccccc" : "#eeeeee");
      doc.text(kLeft - 6, py(y) + 4, tick_label(y), "end", 11);
    }
  }
  doc.text(kLeft + pw / 2, kHeight - 16, "training FLOPs C (log10)", "middle", 13);
  doc.text(16, kTop - 14, "loss (log10)", "start", 13);

  for (const auto& p : points) doc.circle(px(p.flops), py(p.loss), 1.6, "#9ecae1", "point");
  for (const auto& e : envelope) doc.circle(px(e.flops), py(e.loss), 3.0, "#08519c", "envelope");
  doc.polyline(project(fitted), "#d62728", 2.0, "", "fit");

  char fit_text[128];
  std::snprintf(fit_text, sizeof fit_text, "fit L(C) = %.6g·C^%.6g", loss_fit.beta,
                loss_fit.alpha);
  doc.text(kLeft + 10, kTop + 18, fit_text, "start", 12, "#d62728");
  if (overlay) {
    doc.polyline(project(reference), "#2ca02c", 2.0, "6,4", "table2");
    const std::string name(arch::arch_name(overlay->kind));
    double y = kTop + 36;
    for (auto q : {fit::LawQuantity::kLoss, fit::LawQuantity::kNOpt, fit::LawQuantity::kDOpt}) {
      doc.text(kLeft + 10, y,
               "published " + name + " " + std::string(fit::quantity_name(q)) + "(C) = " +
                   law_label(fit::table2_law(overlay->kind, q)),
               "start", 12, "#2ca02c");
      y += 16;
    }
    char unit[64];
    std::snprintf(unit, sizeof unit, "published laws use C / %g", overlay->flops_unit);
    doc.text(kLeft + 10, y, unit, "start", 11, "#2ca02c");
  }
  return doc.str();
}

}  // namespace scaling_lab::cli
