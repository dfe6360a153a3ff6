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


#ifndef SCALING_LAB_RNG_H_
#define SCALING_LAB_RNG_H_

// All randomness starts from one 64-bit seed. Independent streams are split
// off with SplitMix64 (Steele, Lea & Flood 2014) and each stream drives a
// std::mt19937_64. Distributions come from <random>, so sequences are
// reproducible bit-for-bit only within one standard-library implementation.

#include <cstdint>
#include <random>

namespace scaling_lab {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of stream `stream` under root `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(seed, stream));
}

// SCALING_LAB_SEED if set and parseable, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

}  // namespace scaling_lab

#endif  // SCALING_LAB_RNG_H_
