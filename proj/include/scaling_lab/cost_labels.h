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


#ifndef SCALING_LAB_COST_LABELS_H_
#define SCALING_LAB_COST_LABELS_H_

// Item labels shared by the cost model and the instrumented mixer kernels.

namespace scaling_lab::labels {

inline constexpr char kInputEmbedding[] = "input embedding";
inline constexpr char kOutputEmbedding[] = "output embedding";

inline constexpr char kQkvProjection[] = "qkv projection";
inline constexpr char kHiddenStateProjection[] = "hidden state projection";
inline constexpr char kQkMultiplication[] = "qk multiplication";
inline constexpr char kRope[] = "RoPE";
inline constexpr char kSoftmax[] = "softmax";
inline constexpr char kQkvMultiplication[] = "(qk)v multiplication";
inline constexpr char kOutputProjection[] = "output projection";

inline constexpr char kLaIntraBlock[] = "lightning attention intra block";
inline constexpr char kLaInterBlock[] = "lightning attention inter block";
inline constexpr char kKvUpdate[] = "kv update";
inline constexpr char kAttentionOutputUpdate[] = "attention output update";
inline constexpr char kOutputGate[] = "output gate";
inline constexpr char kGating[] = "gating";

inline constexpr char kLowerBound[] = "lower bound";
inline constexpr char kForgetGate[] = "forget gate compute";
inline constexpr char kFlaIntraBlock[] = "fla intra block";
inline constexpr char kFlaInterBlock[] = "fla inter block";
inline constexpr char kStateUpdate[] = "state update";

inline constexpr char kLrpe[] = "Lrpe";
inline constexpr char kTpeUpProjection[] = "tpe up projection";
inline constexpr char kTpeRecurrence[] = "tpe recurrence";
inline constexpr char kTpeDownProjection[] = "tpe down projection";

inline constexpr char kUvProjection[] = "u,v projection";
inline constexpr char kGluGating[] = "glu gating";
inline constexpr char kDownProjection[] = "down projection";

}  // namespace scaling_lab::labels

#endif  // SCALING_LAB_COST_LABELS_H_
