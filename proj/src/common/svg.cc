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


#include "scaling_lab/svg.h"

#include <cmath>
#include <cstdio>

namespace scaling_lab::svg {

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fmt(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, const std::string& fill,
                    const std::string& css_class, const std::string& tooltip) {
  body_ += "  <rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" fill=\"" + escape(fill) + "\"";
  if (!css_class.empty()) body_ += " class=\"" + escape(css_class) + "\"";
  if (tooltip.empty()) {
    body_ += "/>\n";
  } else {
    body_ += "><title>" + escape(tooltip) + "</title></rect>\n";
  }
}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                    double width, const std::string& dash) {
  body_ += "  <line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
           "\" y2=\"" + fmt(y2) + "\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
           fmt(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + escape(dash) + "\"";
  body_ += "/>\n";
}

void Document::circle(double cx, double cy, double r, const std::string& fill,
                      const std::string& css_class) {
  body_ += "  <circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
           "\" fill=\"" + escape(fill) + "\"";
  if (!css_class.empty()) body_ += " class=\"" + escape(css_class) + "\"";
  body_ += "/>\n";
}

void Document::polyline(const std::vector<std::pair<double, double>>& points,
                        const std::string& stroke, double width, const std::string& dash,
                        const std::string& css_class) {
  body_ += "  <polyline fill=\"none\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
           fmt(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + escape(dash) + "\"";
  if (!css_class.empty()) body_ += " class=\"" + escape(css_class) + "\"";
  body_ += " points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) body_ += ' ';
    body_ += fmt(points[i].first) + "," + fmt(points[i].second);
  }
  body_ += "\"/>\n";
}

void Document::text(double x, double y, const std::string& content, const std::string& anchor,
                    double size, const std::string& fill) {
  body_ += "  <text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + escape(anchor) +
           "\" font-size=\"" + fmt(size) + "\" fill=\"" + escape(fill) + "\">" +
           escape(content) + "</text>\n";
}

std::string Document::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_) + "\" height=\"" +
         fmt(height_) + "\" viewBox=\"0 0 " + fmt(width_) + " " + fmt(height_) +
         "\" font-family=\"sans-serif\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(width_) + "\" height=\"" + fmt(height_) +
         "\" fill=\"#ffffff\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

}  // namespace scaling_lab::svg
