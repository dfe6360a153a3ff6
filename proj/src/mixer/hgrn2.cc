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

Matrix hgrn2_lower_bound(const Matrix& lr_raw, FlopCounter* counter) {
  const std::size_t layers = lr_raw.rows(), channels = lr_raw.cols();
  if (layers == 0) throw ShapeMismatch("hgrn2_lower_bound: need at least one layer");
  Matrix out(layers, channels);
  for (std::size_t c = 0; c < channels; ++c) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < layers; ++s) top = std::max(top, lr_raw(s, c));
    double sum = 0.0;
    for (std::size_t s = 0; s < layers; ++s) {
      out(s, c) = std::exp(lr_raw(s, c) - top);
      sum += out(s, c);
    }
    double running = 0.0;
    for (std::size_t s = 0; s < layers; ++s) {
      running += out(s, c) / sum;
      out(s, c) = running;
    }
    // The cumulative sum of a distribution ends at exactly one.
    out(layers - 1, c) = 1.0;
  }
  charge(counter, labels::kLowerBound, 4 * layers * channels);
  return out;
}

Matrix fla_recurrence(const Matrix& og, const Matrix& fg, const Matrix& h) {
  internal::check_gates(og, fg, h, "fla_recurrence");
  const std::size_t n = og.rows(), dk = og.cols(), dv = h.cols();
  Matrix state(dk, dv);
  Matrix out(n, dv);
  for (std::size_t t = 0; t < n; ++t) {
    auto f = fg.row(t);
    auto ht = h.row(t);
    for (std::size_t a = 0; a < dk; ++a) {
      const double key = 1.0 - f[a];
      auto row = state.row(a);
      for (std::size_t c = 0; c < dv; ++c) row[c] = f[a] * row[c] + key * ht[c];
    }
    auto o = out.row(t);
    auto q = og.row(t);
    for (std::size_t a = 0; a < dk; ++a) {
      auto row = state.row(a);
      for (std::size_t c = 0; c < dv; ++c) o[c] += row[c] * q[a];
    }
  }
  return out;
}

Matrix fla_chunked(const Matrix& og, const Matrix& fg, const Matrix& h,
                   std::size_t block, FlopCounter* counter) {
  internal::check_gates(og, fg, h, "fla_chunked");
  internal::check_block(block, "fla_chunked");
  const std::size_t n = og.rows(), dk = og.cols(), dv = h.cols();
  Matrix state(dk, dv);
  Matrix out(n, dv);
  std::vector<double> ratio(dk);

  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t m = std::min(block, n - start);

    // Intra block: A[i][j] = sum_a og_i[a] * prod_{r=j+1..i} fg_r[a] * key_j[a].
    Matrix scores(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(ratio.begin(), ratio.end(), 1.0);
      for (std::size_t jj = i + 1; jj-- > 0;) {
        auto q = og.row(start + i);
        auto f = fg.row(start + jj);
        double acc = 0.0;
        for (std::size_t a = 0; a < dk; ++a) acc += q[a] * ratio[a] * (1.0 - f[a]);
        scores(i, jj) = acc;
        for (std::size_t a = 0; a < dk; ++a) ratio[a] *= f[a];
      }
    }
    Matrix intra(m, dv);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        auto hj = h.row(start + j);
        for (std::size_t c = 0; c < dv; ++c) intra(i, c) += scores(i, j) * hj[c];
      }
    }
    charge(counter, labels::kFlaIntraBlock, 2 * m * m * dk + m * m + 2 * m * m * dv);

    // Inter block: og_i decayed by prod_{r=start..i} fg_r against the carried state.
    Matrix inter(m, dv);
    std::fill(ratio.begin(), ratio.end(), 1.0);
    for (std::size_t i = 0; i < m; ++i) {
      auto q = og.row(start + i);
      auto f = fg.row(start + i);
      for (std::size_t a = 0; a < dk; ++a) {
        ratio[a] *= f[a];
        const double qa = q[a] * ratio[a];
        auto row = state.row(a);
        for (std::size_t c = 0; c < dv; ++c) inter(i, c) += qa * row[c];
      }
    }
    charge(counter, labels::kFlaInterBlock, 2 * m * dk * dv);

    for (std::size_t i = 0; i < m; ++i) {
      auto o = out.row(start + i);
      for (std::size_t c = 0; c < dv; ++c) o[c] = intra(i, c) + inter(i, c);
    }
    charge(counter, labels::kAttentionOutputUpdate, m * dv);

    // State: S <- diag(prod fg) S + sum_j diag(prod_{r>j} fg_r) key_j h_j^T.
    // `ratio` now holds the full-block product.
    Matrix local(dk, dv);
    std::vector<double> tail(dk, 1.0);
    for (std::size_t jj = m; jj-- > 0;) {
      auto f = fg.row(start + jj);
      auto hj = h.row(start + jj);
      for (std::size_t a = 0; a < dk; ++a) {
        const double ka = tail[a] * (1.0 - f[a]);
        for (std::size_t c = 0; c < dv; ++c) local(a, c) += ka * hj[c];
        tail[a] *= f[a];
      }
    }
    for (std::size_t a = 0; a < dk; ++a) {
      for (std::size_t c = 0; c < dv; ++c) state(a, c) = ratio[a] * state(a, c) + local(a, c);
    }
    charge(counter, labels::kStateUpdate, 2 * m * dk * dv + dk * dv);
  }
  return out;
}

}  // namespace scaling_lab::mixer
