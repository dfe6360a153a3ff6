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


#ifndef SCALING_LAB_FLOP_COUNTER_H_
#define SCALING_LAB_FLOP_COUNTER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace scaling_lab {

// Tallies FLOPs by cost-item label while a reference kernel runs. Kernels
// charge 2 per multiply-accumulate of a matrix product and 1 per elementwise
// multiply, add or fused scale-add. Norms, activations and the application of
// decay factors to operands are not charged.
class FlopCounter {
 public:
  void add(std::string_view label, std::uint64_t flops) {
    counts_[std::string(label)] += flops;
  }
  std::uint64_t get(std::string_view label) const {
    auto it = counts_.find(std::string(label));
    return it == counts_.end() ? 0 : it->second;
  }
  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& [label, count] : counts_) sum += count;
    return sum;
  }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  void clear() { counts_.clear(); }

 private:
  std::map<std::string, std::uint64_t> counts_;
};

// Null-safe helper for kernels that take an optional counter.
inline void charge(FlopCounter* counter, std::string_view label,
                   std::uint64_t flops) {
  if (counter != nullptr) counter->add(label, flops);
}

}  // namespace scaling_lab

#endif  // SCALING_LAB_FLOP_COUNTER_H_
