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


#ifndef SCALING_LAB_MIXERS_OMP_H_
#define SCALING_LAB_MIXERS_OMP_H_

// OpenMP kernels with the same contracts as mixers.h. Each output row is
// written by exactly one thread in a fixed summation order, so results do not
// depend on the thread count.

#include <cstddef>

#include "scaling_lab/matrix.h"
#include "scaling_lab/mixers.h"

namespace scaling_lab::mixer::omp {

// Query rows in parallel.
Matrix softmax_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                         bool causal = true);

// Every query replays its own prefix independently.
Matrix gtb_recurrence(const Matrix& q, const Matrix& k, const Matrix& v,
                      GtbMode mode = GtbMode::kStabilized);

// Three phases: per-block intra attention and block-local kv sums in
// parallel, a serial scan of block states, then inter-block terms in parallel.
Matrix lightning_chunked(const Matrix& q, const Matrix& k, const Matrix& v,
                         double decay, std::size_t block);

// Same three-phase schedule with data-dependent per-channel decay.
Matrix fla_chunked(const Matrix& og, const Matrix& fg, const Matrix& h,
                   std::size_t block);

// Row-parallel dense product.
Matrix matmul(const Matrix& a, const Matrix& b);

// Number of threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace scaling_lab::mixer::omp

#endif  // SCALING_LAB_MIXERS_OMP_H_
