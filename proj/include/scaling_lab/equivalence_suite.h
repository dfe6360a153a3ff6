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


#ifndef SCALING_LAB_EQUIVALENCE_SUITE_H_
#define SCALING_LAB_EQUIVALENCE_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scaling_lab::mixer {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t instances = 200;
  std::size_t max_seq_len = 64;
  std::size_t max_head_dim = 16;
  // Replaces every per-property tolerance when set.
  std::optional<double> tolerance;
  // When non-empty, tensors of instance 0 are written here as CSV.
  std::string dump_dir;
};

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Random instances are checked in parallel; each result is a max over
// instances and therefore independent of scheduling.
std::vector<PropertyResult> run_equivalence_suite(const SuiteConfig& config);

}  // namespace scaling_lab::mixer

#endif  // SCALING_LAB_EQUIVALENCE_SUITE_H_
