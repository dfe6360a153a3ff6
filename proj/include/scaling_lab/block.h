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


#ifndef SCALING_LAB_BLOCK_H_
#define SCALING_LAB_BLOCK_H_

// Full residual block (token mixer + GLU channel mixer) for each architecture.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "scaling_lab/arch_cost.h"
#include "scaling_lab/flop_counter.h"
#include "scaling_lab/matrix.h"
#include "scaling_lab/mixers.h"

namespace scaling_lab::mixer {

struct BlockWeights {
  arch::ArchKind kind = arch::ArchKind::kSoftmaxAttention;
  std::size_t heads = 1;

  // Token mixer. For HGRN2 the three projections produce Og, Fg and H.
  Matrix wq, wk, wv;  // d x d, head i owns columns [i*dh, (i+1)*dh)
  Matrix wo;          // d x d

  Matrix gate_down;  // d x t   (TNL, cosFormer2)
  Matrix gate_up;    // t x d

  std::vector<double> decays;  // TNL, one per head, each in (0, 1]
  Matrix lrpe_theta;           // cosFormer2, heads x dh
  std::vector<double> lower_bound;  // HGRN2, length d (this layer's Lr row)
  std::optional<TpeWeights> tpe;    // cosFormer2, applied to the block input
  bool rope = true;                 // LLaMA

  // Channel mixer.
  Matrix w_u, w_v;  // d x g
  Matrix w_down;    // g x d
};

struct BlockOptions {
  std::size_t block_size = 0;  // linear-attention chunk; 0 means d/h
  bool parallel = false;       // use the OpenMP kernels
  FlopCounter* counter = nullptr;  // serial path only
};

// Data-independent per-head decays 1 - 2^-(i+1).
std::vector<double> default_tnl_decays(std::size_t heads);

// Random weights scaled by 1/sqrt(fan_in); decays, theta and lower bounds
// get their documented defaults or random values in range.
BlockWeights random_block_weights(arch::ArchKind kind, std::size_t dim,
                                  std::size_t heads, std::size_t glu_dim,
                                  std::size_t gate_rank, std::mt19937_64& rng,
                                  std::size_t tpe_dim = 0);

// Throws ShapeMismatch if any weight disagrees with (d, heads) and the kind.
void validate_block_weights(const BlockWeights& w, std::size_t dim);

// Parameter-free RMS normalization of each row.
Matrix rms_norm(const Matrix& x);

// x (n x d) -> x' (n x d):
//   o  = x + token_mixer(norm(x))
//   x' = o + glu(norm(o))
Matrix block_forward(const Matrix& x, const BlockWeights& w,
                     const BlockOptions& options = {});

}  // namespace scaling_lab::mixer

#endif  // SCALING_LAB_BLOCK_H_
