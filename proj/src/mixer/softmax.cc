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
#include <limits>

#include "checks.h"
#include "scaling_lab/cost_labels.h"
#include "scaling_lab/mixers.h"

namespace scaling_lab::mixer {

Matrix softmax_attention_weights(const Matrix& q, const Matrix& k, bool causal) {
  if (q.rows() != k.rows() || q.cols() != k.cols()) {
    throw ShapeMismatch("softmax_attention_weights: Q and K shapes differ");
  }
  const std::size_t n = q.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Matrix p(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t last = causal ? t + 1 : n;
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < last; ++j) {
      p(t, j) = dot(q.row(t), k.row(j)) * scale;
      row_max = std::max(row_max, p(t, j));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < last; ++j) {
      p(t, j) = std::exp(p(t, j) - row_max);
      sum += p(t, j);
    }
    for (std::size_t j = 0; j < last; ++j) p(t, j) /= sum;
  }
  return p;
}

Matrix softmax_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                         bool causal, FlopCounter* counter) {
  internal::check_qkv(q, k, v, "softmax_attention");
  const std::size_t n = q.rows();
  // Charged as a dense n x n score matrix, masked afterwards.
  charge(counter, labels::kQkMultiplication, 2 * n * n * q.cols());
  charge(counter, labels::kSoftmax, 3 * n * n);
  charge(counter, labels::kQkvMultiplication, 2 * n * n * v.cols());
  return matmul(softmax_attention_weights(q, k, causal), v);
}

std::vector<double> gtb_normalizers(const Matrix& q, const Matrix& k,
                                    std::size_t t) {
  if (q.rows() != k.rows() || q.cols() != k.cols() || t >= q.rows()) {
    throw ShapeMismatch("gtb_normalizers: bad shapes or row index");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  std::vector<double> s;
  s.reserve(t + 1);
  double running = 0.0;
  for (std::size_t j = 0; j <= t; ++j) {
    running += std::exp(dot(q.row(t), k.row(j)) * scale);
    s.push_back(running);
  }
  return s;
}

Matrix gtb_recurrence(const Matrix& q, const Matrix& k, const Matrix& v,
                      GtbMode mode) {
  internal::check_qkv(q, k, v, "gtb_recurrence");
  const std::size_t n = q.rows();
  const std::size_t dv = v.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Matrix out(n, dv);
  for (std::size_t t = 0; t < n; ++t) {
    auto o = out.row(t);
    double s = 0.0;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= t; ++j) {
      const double score = dot(q.row(t), k.row(j)) * scale;
      double w;
      if (mode == GtbMode::kStabilized) {
        if (score > shift) {
          s = (s == 0.0) ? 0.0 : s * std::exp(shift - score);
          shift = score;
        }
        w = std::exp(score - shift);
      } else {
        w = std::exp(score);
      }
      const double s_next = s + w;
      const double keep = s / s_next;
      auto vj = v.row(j);
      for (std::size_t c = 0; c < dv; ++c) o[c] = keep * o[c] + (1.0 - keep) * vj[c];
      s = s_next;
    }
  }
  return out;
}

}  // namespace scaling_lab::mixer
