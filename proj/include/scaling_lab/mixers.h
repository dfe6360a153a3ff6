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


#ifndef SCALING_LAB_MIXERS_H_
#define SCALING_LAB_MIXERS_H_

// Single-head reference token mixers. Every kernel takes row-per-token
// matrices (n x head_dim) and returns an n x value_dim output. These are the
// serial references; OpenMP versions with identical contracts live in
// mixers_omp.h and are checked against these.

#include <cstddef>
#include <span>
#include <vector>

#include "scaling_lab/flop_counter.h"
#include "scaling_lab/matrix.h"

namespace scaling_lab::mixer {

// softmax(Q K^T / sqrt(head_dim)) V, computed densely with max subtraction.
Matrix softmax_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                         bool causal = true, FlopCounter* counter = nullptr);

// The attention matrix itself (n x n); rows sum to one.
Matrix softmax_attention_weights(const Matrix& q, const Matrix& k,
                                 bool causal = true);

enum class GtbMode {
  kNaive,       // s_t^j accumulates raw exp(q_t k_j / sqrt(d))
  kStabilized,  // running-max rescaling; same ratios s^{j-1}/s^j
};

// Softmax attention rewritten as an additive recurrence per query: for each
// t, o_t^j = (s^{j-1}/s^j) o_t^{j-1} + (1 - s^{j-1}/s^j) v_j, j = 1..t.
Matrix gtb_recurrence(const Matrix& q, const Matrix& k, const Matrix& v,
                      GtbMode mode = GtbMode::kStabilized);

// Naive normalizer trace s_t^1..s_t^t for query row t.
std::vector<double> gtb_normalizers(const Matrix& q, const Matrix& k,
                                    std::size_t t);

// kv_t = decay * kv_{t-1} + k_t v_t^T,  o_t = kv_t^T q_t.  decay in (0, 1].
Matrix lin_attn_recurrent(const Matrix& q, const Matrix& k, const Matrix& v,
                          double decay);

// Brute-force O(n^2) form: O = ((Q K^T) .* M) V, M[t][s] = decay^(t-s), s <= t.
Matrix lin_attn_quadratic(const Matrix& q, const Matrix& k, const Matrix& v,
                          double decay);

// Block-wise linear attention: decayed quadratic attention inside each block
// plus the carried kv state for earlier blocks. The last block may be short.
Matrix lightning_chunked(const Matrix& q, const Matrix& k, const Matrix& v,
                         double decay, std::size_t block,
                         FlopCounter* counter = nullptr);

// x'[t] = [cos(p_t * theta) .* x[t], sin(p_t * theta) .* x[t]], p_t the
// absolute position of row t. Output has twice the columns.
Matrix lrpe_transform(const Matrix& x, std::span<const double> theta,
                      std::span<const std::size_t> positions,
                      FlopCounter* counter = nullptr);
// Positions 0..n-1.
Matrix lrpe_transform(const Matrix& x, std::span<const double> theta,
                      FlopCounter* counter = nullptr);

// Minimal per-channel positional recurrence. Every channel c of x is lifted to
// e hidden lanes u[c][k] = up[c][k] * x[c], each lane runs
// h_t = decay[k] * h_{t-1} + u_t, and the lanes are contracted back with
// down[c][k]. Charged as 2nde + nde + nde.
struct TpeWeights {
  Matrix up;                  // d x e
  std::vector<double> decay;  // e, each in [0, 1)
  Matrix down;                // d x e
};
Matrix tpe_transform(const Matrix& x, const TpeWeights& weights,
                     FlopCounter* counter = nullptr);

// Softmax over the layer axis (rows) followed by a cumulative sum over layers.
// Row s is the forget-gate lower bound of layer s.
Matrix hgrn2_lower_bound(const Matrix& lr_raw, FlopCounter* counter = nullptr);

// Gated state recurrence with query = og, per-step decay = fg, key = 1 - fg,
// value = h:  S_t = diag(fg_t) S_{t-1} + (1 - fg_t) h_t^T,  o_t = S_t^T og_t.
// Gates must lie in [0, 1].
Matrix fla_recurrence(const Matrix& og, const Matrix& fg, const Matrix& h);

// Chunked form of fla_recurrence with data-dependent decay inside each block.
Matrix fla_chunked(const Matrix& og, const Matrix& fg, const Matrix& h,
                   std::size_t block, FlopCounter* counter = nullptr);

}  // namespace scaling_lab::mixer

#endif  // SCALING_LAB_MIXERS_H_
