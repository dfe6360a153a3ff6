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


#ifndef SCALING_LAB_SRC_MIXER_CHECKS_H_
#define SCALING_LAB_SRC_MIXER_CHECKS_H_

#include <cmath>
#include <string>

#include "scaling_lab/errors.h"
#include "scaling_lab/matrix.h"

namespace scaling_lab::mixer::internal {

// Q and K share (n, head_dim); V shares n.
inline void check_qkv(const Matrix& q, const Matrix& k, const Matrix& v,
                      const char* op) {
  if (q.rows() != k.rows() || q.rows() != v.rows() || q.cols() != k.cols()) {
    throw ShapeMismatch(std::string(op) + ": Q is " + std::to_string(q.rows()) +
                        "x" + std::to_string(q.cols()) + ", K is " +
                        std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                        ", V is " + std::to_string(v.rows()) + "x" +
                        std::to_string(v.cols()));
  }
}

inline void check_decay(double decay, const char* op) {
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw InvalidArgument(std::string(op) + ": decay must lie in (0, 1], got " +
                          std::to_string(decay));
  }
}

inline void check_block(std::size_t block, const char* op) {
  if (block == 0) throw InvalidArgument(std::string(op) + ": block size must be >= 1");
}

inline void check_gates(const Matrix& og, const Matrix& fg, const Matrix& h,
                        const char* op) {
  if (og.rows() != fg.rows() || og.rows() != h.rows() || og.cols() != fg.cols()) {
    throw ShapeMismatch(std::string(op) + ": gate shapes disagree");
  }
  for (double f : fg.data()) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw InvalidArgument(std::string(op) + ": forget gate " + std::to_string(f) +
                            " outside [0, 1]");
    }
  }
}

}  // namespace scaling_lab::mixer::internal

#endif  // SCALING_LAB_SRC_MIXER_CHECKS_H_
