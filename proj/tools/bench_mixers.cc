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


// Serial reference kernels vs their OpenMP counterparts.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "scaling_lab/matrix.h"
#include "scaling_lab/mixers.h"
#include "scaling_lab/mixers_omp.h"
#include "scaling_lab/rng.h"

namespace mx = scaling_lab::mixer;
using scaling_lab::Matrix;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                     double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(rng);
  return m;
}

double best_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, double err) {
  std::printf("%-22s %10.3f %10.3f %8.2fx  max|diff|=%.2e\n", name, serial, parallel,
              serial / parallel, err);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? static_cast<std::size_t>(std::atol(argv[1])) : 1024;
  const std::size_t d = argc > 2 ? static_cast<std::size_t>(std::atol(argv[2])) : 64;
  const int reps = 3;
  auto rng = scaling_lab::make_stream(scaling_lab::seed_from_env(), 99);
  const Matrix q = random_matrix(n, d, rng);
  const Matrix k = random_matrix(n, d, rng);
  const Matrix v = random_matrix(n, d, rng);
  const Matrix og = random_matrix(n, d, rng, 0.0, 1.0);
  const Matrix fg = random_matrix(n, d, rng, 0.8, 1.0);
  const std::size_t block = 64;

  std::printf("n=%zu d=%zu threads=%d (best of %d, ms)\n", n, d, mx::omp::max_threads(), reps);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial", "omp", "speedup");

  Matrix a, b;
  double ts = best_ms([&] { a = mx::softmax_attention(q, k, v); }, reps);
  double tp = best_ms([&] { b = mx::omp::softmax_attention(q, k, v); }, reps);
  report("softmax attention", ts, tp, scaling_lab::max_abs_diff(a, b));

  ts = best_ms([&] { a = mx::gtb_recurrence(q, k, v, mx::GtbMode::kStabilized); }, reps);
  tp = best_ms([&] { b = mx::omp::gtb_recurrence(q, k, v, mx::GtbMode::kStabilized); }, reps);
  report("gtb recurrence", ts, tp, scaling_lab::max_abs_diff(a, b));

  ts = best_ms([&] { a = mx::lightning_chunked(q, k, v, 0.99, block); }, reps);
  tp = best_ms([&] { b = mx::omp::lightning_chunked(q, k, v, 0.99, block); }, reps);
  report("lightning chunked", ts, tp, scaling_lab::max_abs_diff(a, b));

  ts = best_ms([&] { a = mx::fla_chunked(og, fg, v, block); }, reps);
  tp = best_ms([&] { b = mx::omp::fla_chunked(og, fg, v, block); }, reps);
  report("fla chunked", ts, tp, scaling_lab::max_abs_diff(a, b));

  const Matrix w = random_matrix(d, 4 * d, rng);
  ts = best_ms([&] { a = scaling_lab::matmul(q, w); }, reps);
  tp = best_ms([&] { b = mx::omp::matmul(q, w); }, reps);
  report("matmul", ts, tp, scaling_lab::max_abs_diff(a, b));
  return 0;
}
