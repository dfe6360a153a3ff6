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


#include "scaling_lab/arch_cost.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "scaling_lab/cost_labels.h"
#include "scaling_lab/errors.h"

namespace scaling_lab::arch {
namespace {

constexpr Count kTrainFactor = 3;  // forward + backward

struct BreakdownBuilder {
  const ModelShape& shape;
  CostBreakdown out;

  void add(const char* label, Count forward, CostScope scope = CostScope::kPerLayer,
           bool per_sequence = true) {
    CostItem item;
    item.label = label;
    item.scope = scope;
    item.per_sequence = per_sequence;
    item.forward = forward;
    Count flops = kTrainFactor * forward;
    if (per_sequence) flops *= static_cast<Count>(shape.batch);
    if (scope == CostScope::kPerLayer) flops *= static_cast<Count>(shape.layers);
    item.flops = flops;
    out.total += flops;
    out.items.push_back(std::move(item));
  }
};

// Sums a per-block cost over the blocks of a length-n sequence.
template <typename PerBlock>
Count over_blocks(std::int64_t n, std::int64_t block, PerBlock cost) {
  const std::int64_t full = n / block;
  const std::int64_t rest = n % block;
  Count total = static_cast<Count>(full) * cost(static_cast<Count>(block));
  if (rest > 0) total += cost(static_cast<Count>(rest));
  return total;
}

void add_channel_mixer(BreakdownBuilder& b, Count n, Count d, Count g) {
  b.add(labels::kUvProjection, 4 * n * d * g);
  b.add(labels::kGluGating, n * g);
  b.add(labels::kDownProjection, 2 * n * d * g);
}

}  // namespace

std::string_view arch_name(ArchKind kind) {
  switch (kind) {
    case ArchKind::kSoftmaxAttention:
      return "llama";
    case ArchKind::kTnl:
      return "tnl";
    case ArchKind::kHgrn2:
      return "hgrn2";
    case ArchKind::kCosFormer2:
      return "cosformer2";
  }
  return "unknown";
}

ArchKind parse_arch(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "llama" || lower == "softmax") return ArchKind::kSoftmaxAttention;
  if (lower == "tnl") return ArchKind::kTnl;
  if (lower == "hgrn2") return ArchKind::kHgrn2;
  if (lower == "cosformer2" || lower == "cos2") return ArchKind::kCosFormer2;
  throw InvalidArgument("unknown architecture '" + std::string(name) +
                        "' (expected llama, tnl, hgrn2 or cosformer2)");
}

std::int64_t ModelShape::gate_rank_or_default() const {
  return gate_rank > 0 ? gate_rank : head_dim();
}
std::int64_t ModelShape::block_or_default() const {
  return block > 0 ? block : head_dim();
}
std::int64_t ModelShape::tpe_dim_or_default() const {
  return tpe_dim > 0 ? tpe_dim : head_dim();
}

void validate(const ModelShape& s) {
  auto positive = [](std::int64_t v, const char* name) {
    if (v <= 0) {
      throw InvalidShape(std::string("field '") + name +
                         "' must be a positive integer, got " +
                         std::to_string(v));
    }
  };
  positive(s.batch, "b");
  positive(s.seq_len, "n");
  positive(s.layers, "l");
  positive(s.dim, "d");
  positive(s.heads, "h");
  positive(s.glu_dim, "g");
  positive(s.vocab, "v");
  if (s.gate_rank < 0) positive(s.gate_rank, "t");
  if (s.block < 0) positive(s.block, "B");
  if (s.tpe_dim < 0) positive(s.tpe_dim, "e");
  if (s.dim % s.heads != 0) {
    throw InvalidShape("d mod h must be 0 (d=" + std::to_string(s.dim) +
                       ", h=" + std::to_string(s.heads) + ")");
  }
}

const CostItem* CostBreakdown::find(std::string_view label) const {
  for (const auto& item : items) {
    if (item.label == label) return &item;
  }
  return nullptr;
}

std::int64_t param_count(ArchKind kind, const ModelShape& shape,
                         bool include_embedding) {
  validate(shape);
  const std::int64_t l = shape.layers, d = shape.dim, g = shape.glu_dim;
  const std::int64_t t = shape.gate_rank_or_default();
  const std::int64_t e = shape.tpe_dim_or_default();
  std::int64_t token_mixer = 4 * d * d;
  std::int64_t extra = 0;
  switch (kind) {
    case ArchKind::kSoftmaxAttention:
      break;
    case ArchKind::kTnl:
      token_mixer += 2 * d * t;
      break;
    case ArchKind::kHgrn2:
      extra = l * d;  // lower bound
      break;
    case ArchKind::kCosFormer2:
      token_mixer += 2 * d * t;
      extra = d * e;  // tpe
      break;
  }
  std::int64_t total = l * (token_mixer + 3 * d * g) + extra;
  if (include_embedding) total += d * shape.vocab;
  return total;
}

CostBreakdown flops_breakdown(ArchKind kind, const ModelShape& shape,
                              bool include_embedding) {
  validate(shape);
  const Count n = static_cast<Count>(shape.seq_len);
  const Count d = static_cast<Count>(shape.dim);
  const Count h = static_cast<Count>(shape.heads);
  const Count g = static_cast<Count>(shape.glu_dim);
  const Count v = static_cast<Count>(shape.vocab);
  const Count t = static_cast<Count>(shape.gate_rank_or_default());
  const Count e = static_cast<Count>(shape.tpe_dim_or_default());
  const Count dh = static_cast<Count>(shape.head_dim());
  const std::int64_t block = shape.block_or_default();

  BreakdownBuilder b{shape, {}};
  if (include_embedding) {
    b.add(labels::kInputEmbedding, 2 * n * d * v, CostScope::kPerModel);
  }

  switch (kind) {
    case ArchKind::kSoftmaxAttention:
      b.add(labels::kQkvProjection, 3 * 2 * n * d * d);
      b.add(labels::kQkMultiplication, 2 * n * n * d);
      b.add(labels::kRope, 4 * n * d);
      b.add(labels::kSoftmax, 3 * n * n * h);
      b.add(labels::kQkvMultiplication, 2 * n * n * d);
      b.add(labels::kOutputProjection, 2 * n * d * d);
      break;

    case ArchKind::kTnl:
      b.add(labels::kQkvProjection, 3 * 2 * n * d * d);
      b.add(labels::kLaIntraBlock, over_blocks(shape.seq_len, block, [&](Count m) {
              return 4 * m * m * d + m * m * h;
            }));
      b.add(labels::kLaInterBlock, over_blocks(shape.seq_len, block,
                                               [&](Count m) { return 2 * m * d * dh; }));
      b.add(labels::kKvUpdate, over_blocks(shape.seq_len, block, [&](Count m) {
              return 2 * m * d * dh + d * dh;
            }));
      b.add(labels::kAttentionOutputUpdate,
            over_blocks(shape.seq_len, block, [&](Count m) { return m * d; }));
      b.add(labels::kOutputGate, 4 * n * t * d);
      b.add(labels::kGating, n * d);
      b.add(labels::kOutputProjection, 2 * n * d * d);
      break;

    case ArchKind::kHgrn2:
      b.add(labels::kLowerBound, 4 * static_cast<Count>(shape.layers) * d,
            CostScope::kPerModel, /*per_sequence=*/false);
      b.add(labels::kHiddenStateProjection, 3 * 2 * n * d * d);
      b.add(labels::kForgetGate, 4 * n * d);
      b.add(labels::kFlaIntraBlock, over_blocks(shape.seq_len, block, [&](Count m) {
              return 4 * m * m * d + m * m * h;
            }));
      b.add(labels::kFlaInterBlock, over_blocks(shape.seq_len, block,
                                                [&](Count m) { return 2 * m * d * dh; }));
      b.add(labels::kStateUpdate, over_blocks(shape.seq_len, block, [&](Count m) {
              return 2 * m * d * dh + d * dh;
            }));
      b.add(labels::kAttentionOutputUpdate,
            over_blocks(shape.seq_len, block, [&](Count m) { return m * d; }));
      b.add(labels::kOutputProjection, 2 * n * d * d);
      break;

    case ArchKind::kCosFormer2:
      b.add(labels::kTpeUpProjection, 2 * n * d * e, CostScope::kPerModel);
      b.add(labels::kTpeRecurrence, n * d * e, CostScope::kPerModel);
      b.add(labels::kTpeDownProjection, n * d * e, CostScope::kPerModel);
      b.add(labels::kQkvProjection, 3 * 2 * n * d * d);
      b.add(labels::kLrpe, 4 * n * d);
      b.add(labels::kLaIntraBlock, over_blocks(shape.seq_len, block, [&](Count m) {
              return 6 * m * m * d + m * m * h;
            }));
      b.add(labels::kLaInterBlock, over_blocks(shape.seq_len, block,
                                               [&](Count m) { return 4 * m * d * dh; }));
      b.add(labels::kKvUpdate, over_blocks(shape.seq_len, block, [&](Count m) {
              return 4 * m * d * dh + 2 * d * dh;
            }));
      b.add(labels::kAttentionOutputUpdate,
            over_blocks(shape.seq_len, block, [&](Count m) { return m * d; }));
      b.add(labels::kOutputGate, 4 * n * t * d);
      b.add(labels::kGating, n * d);
      b.add(labels::kOutputProjection, 2 * n * d * d);
      break;
  }

  add_channel_mixer(b, n, d, g);
  if (include_embedding) {
    b.add(labels::kOutputEmbedding, 2 * n * d * v, CostScope::kPerModel);
  }
  return std::move(b.out);
}

Count flops_per_step(ArchKind kind, const ModelShape& shape,
                     bool include_embedding) {
  return flops_breakdown(kind, shape, include_embedding).total;
}

Count closed_form_flops(ArchKind kind, const ModelShape& shape) {
  validate(shape);
  const Count b = static_cast<Count>(shape.batch);
  const Count n = static_cast<Count>(shape.seq_len);
  const Count l = static_cast<Count>(shape.layers);
  const Count d = static_cast<Count>(shape.dim);
  const Count dh = static_cast<Count>(shape.head_dim());
  // 72bnld^2 * (1 + x) expanded into integer terms; d^2/h = d * dh.
  const Count lead = 72 * b * n * l * d * d;
  switch (kind) {
    case ArchKind::kSoftmaxAttention:
      return lead + 12 * b * n * n * l * d + 20 * b * n * l * d;
    case ArchKind::kTnl:
      return lead + 36 * b * n * l * d * dh + 20 * b * n * l * d;
    case ArchKind::kHgrn2:
      return lead + 24 * b * n * l * d * dh + 29 * b * n * l * d + 12 * d * l;
    case ArchKind::kCosFormer2:
      return lead + 54 * b * n * l * d * dh + 23 * b * n * l * d +
             12 * b * n * d * dh;
  }
  return 0;
}

std::int64_t tokens_per_step(const ModelShape& shape) {
  validate(shape);
  return shape.batch * shape.seq_len;
}

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

double to_double(Count value) {
  return static_cast<double>(static_cast<long double>(value));
}

}  // namespace scaling_lab::arch
