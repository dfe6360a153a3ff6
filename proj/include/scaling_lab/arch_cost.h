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


#ifndef SCALING_LAB_ARCH_COST_H_
#define SCALING_LAB_ARCH_COST_H_

// Exact parameter and training-FLOPs accounting for the four architectures.
//
// Conventions: a multiply-accumulate inside a matrix product counts as 2
// FLOPs, and one training step costs 3x the forward pass. Positional-encoding
// parameters, normalization and activation functions are not counted.
// All arithmetic is integer; FLOPs accumulate in 128 bits so that shapes with
// d <= 2^16 and n <= 2^24 cannot overflow.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scaling_lab::arch {

__extension__ typedef unsigned __int128 Count;

enum class ArchKind { kSoftmaxAttention, kTnl, kHgrn2, kCosFormer2 };

inline constexpr ArchKind kAllArchs[] = {ArchKind::kSoftmaxAttention,
                                         ArchKind::kTnl, ArchKind::kHgrn2,
                                         ArchKind::kCosFormer2};

// "llama", "tnl", "hgrn2", "cosformer2".
std::string_view arch_name(ArchKind kind);
// Accepts the names above plus the aliases "softmax" and "cos2"
// (case-insensitive). Throws InvalidArgument.
ArchKind parse_arch(std::string_view name);

struct ModelShape {
  std::int64_t batch = 1;      // b, sequences per step
  std::int64_t seq_len = 1;    // n
  std::int64_t layers = 1;     // l
  std::int64_t dim = 1;        // d
  std::int64_t heads = 1;      // h
  std::int64_t glu_dim = 1;    // g
  std::int64_t vocab = 1;      // v
  std::int64_t gate_rank = 0;  // t; 0 means d/h
  std::int64_t block = 0;      // B; 0 means d/h
  std::int64_t tpe_dim = 0;    // e; 0 means d/h

  std::int64_t head_dim() const { return dim / heads; }
  std::int64_t gate_rank_or_default() const;
  std::int64_t block_or_default() const;
  std::int64_t tpe_dim_or_default() const;
};

// Throws InvalidShape unless every field is positive (the three optional
// fields may be 0 for "default") and heads divides dim.
void validate(const ModelShape& shape);

// Where a breakdown item is charged: once per layer or once per model.
enum class CostScope { kPerLayer, kPerModel };

struct CostItem {
  std::string label;
  CostScope scope = CostScope::kPerLayer;
  bool per_sequence = true;  // false for terms independent of the batch
  Count forward = 0;  // forward FLOPs for one sequence (one layer if per-layer)
  Count flops = 0;    // training FLOPs contributed per optimizer step
};

struct CostBreakdown {
  std::vector<CostItem> items;
  Count total = 0;  // sum of items[i].flops

  const CostItem* find(std::string_view label) const;
};

std::int64_t param_count(ArchKind kind, const ModelShape& shape,
                         bool include_embedding = false);

// One item per cost term. Linear-attention block costs are summed over
// the actual blocks, so a ragged final block is charged for its real length;
// when B divides n this equals the (n/B)-repeat formulas.
CostBreakdown flops_breakdown(ArchKind kind, const ModelShape& shape,
                              bool include_embedding = false);

// Training FLOPs per step: equals flops_breakdown(...).total.
Count flops_per_step(ArchKind kind, const ModelShape& shape,
                     bool include_embedding = false);

// Closed forms that substitute g = 8d/3 and t = B = e = d/h:
//   LLaMA       72bnld^2 (1 + n/6d + 5/18d)
//   TNL         72bnld^2 (1 + 1/2h + 5/18d)
//   HGRN2       72bnld^2 (1 + 1/3h + 29/72d) + 12dl
//   cosFormer2  72bnld^2 (1 + 3/4h + 23/72d) + 12bnd(d/h)
// The explicit g, t, B, e in `shape` are ignored. Embedding excluded.
Count closed_form_flops(ArchKind kind, const ModelShape& shape);

std::int64_t tokens_per_step(const ModelShape& shape);

std::string to_string(Count value);
double to_double(Count value);

}  // namespace scaling_lab::arch

#endif  // SCALING_LAB_ARCH_COST_H_
