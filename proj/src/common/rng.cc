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


#include "scaling_lab/rng.h"

#include <cstdlib>
#include <string>

namespace scaling_lab {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("SCALING_LAB_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(raw, &used, 0);
    if (used != std::string(raw).size()) return fallback;
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace scaling_lab
