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
#include <numeric>
#include <string>

#include "scaling_lab/cost_labels.h"
#include "scaling_lab/errors.h"
#include "scaling_lab/mixers.h"

namespace scaling_lab::mixer {

Matrix lrpe_transform(const Matrix& x, std::span<const double> theta,
                      std::span<const std::size_t> positions,
                      FlopCounter* counter) {
  const std::size_t n = x.rows(), dh = x.cols();
  if (theta.size() != dh) {
    throw ShapeMismatch("lrpe_transform: theta has " + std::to_string(theta.size()) +
                        " entries for " + std::to_string(dh) + " channels");
  }
  if (positions.size() != n) {
    throw ShapeMismatch("lrpe_transform: " + std::to_string(positions.size()) +
                        " positions for " + std::to_string(n) + " rows");
  }
  Matrix out(n, 2 * dh);
  for (std::size_t t = 0; t < n; ++t) {
    const double p = static_cast<double>(positions[t]);
    for (std::size_t c = 0; c < dh; ++c) {
      const double phase = p * theta[c];
      out(t, c) = std::cos(phase) * x(t, c);
      out(t, dh + c) = std::sin(phase) * x(t, c);
    }
  }
  charge(counter, labels::kLrpe, 2 * n * dh);
  return out;
}

Matrix lrpe_transform(const Matrix& x, std::span<const double> theta,
                      FlopCounter* counter) {
  std::vector<std::size_t> positions(x.rows());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  return lrpe_transform(x, theta, positions, counter);
}

Matrix tpe_transform(const Matrix& x, const TpeWeights& w, FlopCounter* counter) {
  const std::size_t n = x.rows(), d = x.cols(), e = w.decay.size();
  if (w.up.rows() != d || w.up.cols() != e || w.down.rows() != d ||
      w.down.cols() != e) {
    throw ShapeMismatch("tpe_transform: weights must be d x e with d=" +
                        std::to_string(d) + ", e=" + std::to_string(e));
  }
  for (double a : w.decay) {
    if (!(a >= 0.0 && a < 1.0)) {
      throw InvalidArgument("tpe_transform: decay " + std::to_string(a) +
                            " outside [0, 1)");
    }
  }
  Matrix state(d, e);
  Matrix out(n, d);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < d; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < e; ++k) {
        const double u = w.up(c, k) * x(t, c);
        state(c, k) = w.decay[k] * state(c, k) + u;
        acc += w.down(c, k) * state(c, k);
      }
      out(t, c) = acc;
    }
  }
  charge(counter, labels::kTpeUpProjection, 2 * n * d * e);
  charge(counter, labels::kTpeRecurrence, n * d * e);
  charge(counter, labels::kTpeDownProjection, n * d * e);
  return out;
}

}  // namespace scaling_lab::mixer
