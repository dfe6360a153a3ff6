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

#include "checks.h"
#include "scaling_lab/cost_labels.h"
#include "scaling_lab/mixers.h"

namespace scaling_lab::mixer {

Matrix lin_attn_recurrent(const Matrix& q, const Matrix& k, const Matrix& v,
                          double decay) {
  internal::check_qkv(q, k, v, "lin_attn_recurrent");
  internal::check_decay(decay, "lin_attn_recurrent");
  const std::size_t n = q.rows(), dk = q.cols(), dv = v.cols();
  Matrix kv(dk, dv);
  Matrix out(n, dv);
  for (std::size_t t = 0; t < n; ++t) {
    auto kt = k.row(t);
    auto vt = v.row(t);
    for (std::size_t a = 0; a < dk; ++a) {
      auto state = kv.row(a);
      for (std::size_t c = 0; c < dv; ++c) state[c] = decay * state[c] + kt[a] * vt[c];
    }
    auto o = out.row(t);
    auto qt = q.row(t);
    for (std::size_t a = 0; a < dk; ++a) {
      auto state = kv.row(a);
      for (std::size_t c = 0; c < dv; ++c) o[c] += state[c] * qt[a];
    }
  }
  return out;
}

Matrix lin_attn_quadratic(const Matrix& q, const Matrix& k, const Matrix& v,
                          double decay) {
  internal::check_qkv(q, k, v, "lin_attn_quadratic");
  internal::check_decay(decay, "lin_attn_quadratic");
  const std::size_t n = q.rows();
  Matrix scores = matmul(q, k.transposed());
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) {
      scores(t, s) *= (s <= t) ? std::pow(decay, static_cast<double>(t - s)) : 0.0;
    }
  }
  return matmul(scores, v);
}

Matrix lightning_chunked(const Matrix& q, const Matrix& k, const Matrix& v,
                         double decay, std::size_t block, FlopCounter* counter) {
  internal::check_qkv(q, k, v, "lightning_chunked");
  internal::check_decay(decay, "lightning_chunked");
  internal::check_block(block, "lightning_chunked");
  const std::size_t n = q.rows(), dk = q.cols(), dv = v.cols();
  Matrix kv(dk, dv);
  Matrix out(n, dv);
  std::vector<double> powers(block + 1);
  for (std::size_t i = 0; i <= block; ++i) powers[i] = std::pow(decay, static_cast<double>(i));

  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t m = std::min(block, n - start);

    // Intra block: dense m x m scores, decay mask, times V.
    Matrix scores(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        scores(i, j) = dot(q.row(start + i), k.row(start + j));
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) scores(i, j) *= (j <= i) ? powers[i - j] : 0.0;
    }
    Matrix intra(m, dv);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double w = scores(i, j);
        auto vj = v.row(start + j);
        for (std::size_t c = 0; c < dv; ++c) intra(i, c) += w * vj[c];
      }
    }
    charge(counter, labels::kLaIntraBlock, 2 * m * m * dk + m * m + 2 * m * m * dv);

    // Inter block: queries against the state carried from earlier blocks.
    Matrix inter(m, dv);
    for (std::size_t i = 0; i < m; ++i) {
      auto qi = q.row(start + i);
      for (std::size_t a = 0; a < dk; ++a) {
        auto state = kv.row(a);
        for (std::size_t c = 0; c < dv; ++c) inter(i, c) += qi[a] * state[c];
      }
    }
    charge(counter, labels::kLaInterBlock, 2 * m * dk * dv);

    for (std::size_t i = 0; i < m; ++i) {
      auto o = out.row(start + i);
      for (std::size_t c = 0; c < dv; ++c) o[c] = intra(i, c) + powers[i + 1] * inter(i, c);
    }
    charge(counter, labels::kAttentionOutputUpdate, m * dv);

    // kv <- decay^m kv + sum_j decay^(m-1-j) k_j v_j^T
    Matrix local(dk, dv);
    for (std::size_t j = 0; j < m; ++j) {
      const double w = powers[m - 1 - j];
      auto kj = k.row(start + j);
      auto vj = v.row(start + j);
      for (std::size_t a = 0; a < dk; ++a) {
        const double ka = w * kj[a];
        for (std::size_t c = 0; c < dv; ++c) local(a, c) += ka * vj[c];
      }
    }
    for (std::size_t a = 0; a < dk; ++a) {
      for (std::size_t c = 0; c < dv; ++c) kv(a, c) = powers[m] * kv(a, c) + local(a, c);
    }
    charge(counter, labels::kKvUpdate, 2 * m * dk * dv + dk * dv);
  }
  return out;
}

}  // namespace scaling_lab::mixer
