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


#ifndef SCALING_LAB_SVG_H_
#define SCALING_LAB_SVG_H_

// Minimal fixed-template SVG writer. Numbers are printed with fixed
// precision so output is byte-stable.

#include <string>
#include <utility>
#include <vector>

namespace scaling_lab::svg {

std::string escape(const std::string& text);
std::string fmt(double v);

class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& css_class = "", const std::string& tooltip = "");
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, const std::string& dash = "");
  void circle(double cx, double cy, double r, const std::string& fill,
              const std::string& css_class = "");
  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                double width = 1.5, const std::string& dash = "",
                const std::string& css_class = "");
  void text(double x, double y, const std::string& content, const std::string& anchor = "start",
            double size = 12, const std::string& fill = "#000000");

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

}  // namespace scaling_lab::svg

#endif  // SCALING_LAB_SVG_H_
