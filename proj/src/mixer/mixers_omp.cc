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


#include "scaling_lab/mixers_omp.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "checks.h"

namespace scaling_lab::mixer::omp {
namespace {

std::int64_t as_index(std::size_t n) { return static_cast<std::int64_t>(n); }

std::size_t block_count(std::size_t n, std::size_t block) {
  return (n + block - 1) / block;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("omp::matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < as_index(a.rows()); ++i) {
    auto dst = out.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      auto src = b.row(p);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += s * src[j];
    }
  }
  return out;
}

Matrix softmax_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                         bool causal) {
  internal::check_qkv(q, k, v, "omp::softmax_attention");
  const std::size_t n = q.rows(), dv = v.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Matrix out(n, dv);
#pragma omp parallel
  {
    std::vector<double> p(n);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t ti = 0; ti < as_index(n); ++ti) {
      const std::size_t t = static_cast<std::size_t>(ti);
      const std::size_t last = causal ? t + 1 : n;
      double row_max = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < last; ++j) {
        p[j] = dot(q.row(t), k.row(j)) * scale;
        row_max = std::max(row_max, p[j]);
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < last; ++j) {
        p[j] = std::exp(p[j] - row_max);
        sum += p[j];
      }
      auto o = out.row(t);
      for (std::size_t j = 0; j < last; ++j) {
        const double w = p[j] / sum;
        auto vj = v.row(j);
        for (std::size_t c = 0; c < dv; ++c) o[c] += w * vj[c];
      }
    }
  }
  return out;
}

Matrix gtb_recurrence(const Matrix& q, const Matrix& k, const Matrix& v,
                      GtbMode mode) {
  internal::check_qkv(q, k, v, "omp::gtb_recurrence");
  const std::size_t n = q.rows(), dv = v.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Matrix out(n, dv);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t ti = 0; ti < as_index(n); ++ti) {
    const std::size_t t = static_cast<std::size_t>(ti);
    auto o = out.row(t);
    double s = 0.0;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= t; ++j) {
      const double score = dot(q.row(t), k.row(j)) * scale;
      double w;
      if (mode == GtbMode::kStabilized) {
        if (score > shift) {
          s = (s == 0.0) ? 0.0 : s * std::exp(shift - score);
          shift = score;
        }
        w = std::exp(score - shift);
      } else {
        w = std::exp(score);
      }
      const double s_next = s + w;
      const double keep = s / s_next;
      auto vj = v.row(j);
      for (std::size_t c = 0; c < dv; ++c) o[c] = keep * o[c] + (1.0 - keep) * vj[c];
      s = s_next;
    }
  }
  return out;
}

Matrix lightning_chunked(const Matrix& q, const Matrix& k, const Matrix& v,
                         double decay, std::size_t block) {
  internal::check_qkv(q, k, v, "omp::lightning_chunked");
  internal::check_decay(decay, "omp::lightning_chunked");
  internal::check_block(block, "omp::lightning_chunked");
  const std::size_t n = q.rows(), dk = q.cols(), dv = v.cols();
  const std::size_t blocks = block_count(n, block);
  std::vector<double> powers(block + 1);
  for (std::size_t i = 0; i <= block; ++i) powers[i] = std::pow(decay, static_cast<double>(i));

  Matrix out(n, dv);
  std::vector<Matrix> local(blocks, Matrix(dk, dv));

  // Phase 1: intra-block attention and block-local kv sums.
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < as_index(blocks); ++bi) {
    const std::size_t start = static_cast<std::size_t>(bi) * block;
    const std::size_t m = std::min(block, n - start);
    for (std::size_t i = 0; i < m; ++i) {
      auto o = out.row(start + i);
      for (std::size_t j = 0; j <= i; ++j) {
        const double w = dot(q.row(start + i), k.row(start + j)) * powers[i - j];
        auto vj = v.row(start + j);
        for (std::size_t c = 0; c < dv; ++c) o[c] += w * vj[c];
      }
    }
    Matrix& kv = local[bi];
    for (std::size_t j = 0; j < m; ++j) {
      auto kj = k.row(start + j);
      auto vj = v.row(start + j);
      for (std::size_t a = 0; a < dk; ++a) {
        const double ka = powers[m - 1 - j] * kj[a];
        for (std::size_t c = 0; c < dv; ++c) kv(a, c) += ka * vj[c];
      }
    }
  }

  // Phase 2: serial scan; carried[b] is the state entering block b.
  std::vector<Matrix> carried(blocks, Matrix(dk, dv));
  for (std::size_t bi = 1; bi < blocks; ++bi) {
    const double fade = powers[block];  // every block before the last is full
    auto prev = carried[bi - 1].data();
    auto add = local[bi - 1].data();
    auto dst = carried[bi].data();
    for (std::size_t x = 0; x < dst.size(); ++x) dst[x] = fade * prev[x] + add[x];
  }

  // Phase 3: inter-block contributions.
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 1; bi < as_index(blocks); ++bi) {
    const std::size_t start = static_cast<std::size_t>(bi) * block;
    const std::size_t m = std::min(block, n - start);
    const Matrix& kv = carried[bi];
    for (std::size_t i = 0; i < m; ++i) {
      auto qi = q.row(start + i);
      auto o = out.row(start + i);
      for (std::size_t c = 0; c < dv; ++c) {
        double acc = 0.0;
        for (std::size_t a = 0; a < dk; ++a) acc += qi[a] * kv(a, c);
        o[c] += powers[i + 1] * acc;
      }
    }
  }
  return out;
}

Matrix fla_chunked(const Matrix& og, const Matrix& fg, const Matrix& h,
                   std::size_t block) {
  internal::check_gates(og, fg, h, "omp::fla_chunked");
  internal::check_block(block, "omp::fla_chunked");
  const std::size_t n = og.rows(), dk = og.cols(), dv = h.cols();
  const std::size_t blocks = block_count(n, block);

  Matrix out(n, dv);
  std::vector<Matrix> local(blocks, Matrix(dk, dv));
  std::vector<std::vector<double>> fade(blocks, std::vector<double>(dk, 1.0));

  // Phase 1: intra-block terms, block-local state sums and whole-block decay.
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < as_index(blocks); ++bi) {
    const std::size_t start = static_cast<std::size_t>(bi) * block;
    const std::size_t m = std::min(block, n - start);
    std::vector<double> ratio(dk);
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(ratio.begin(), ratio.end(), 1.0);
      auto q = og.row(start + i);
      auto o = out.row(start + i);
      for (std::size_t jj = i + 1; jj-- > 0;) {
        auto f = fg.row(start + jj);
        double w = 0.0;
        for (std::size_t a = 0; a < dk; ++a) w += q[a] * ratio[a] * (1.0 - f[a]);
        auto hj = h.row(start + jj);
        for (std::size_t c = 0; c < dv; ++c) o[c] += w * hj[c];
        for (std::size_t a = 0; a < dk; ++a) ratio[a] *= f[a];
      }
    }
    std::vector<double>& tail = fade[bi];
    Matrix& state = local[bi];
    for (std::size_t jj = m; jj-- > 0;) {
      auto f = fg.row(start + jj);
      auto hj = h.row(start + jj);
      for (std::size_t a = 0; a < dk; ++a) {
        const double ka = tail[a] * (1.0 - f[a]);
        for (std::size_t c = 0; c < dv; ++c) state(a, c) += ka * hj[c];
        tail[a] *= f[a];
      }
    }
  }

  // Phase 2: serial scan of entering states.
  std::vector<Matrix> carried(blocks, Matrix(dk, dv));
  for (std::size_t bi = 1; bi < blocks; ++bi) {
    for (std::size_t a = 0; a < dk; ++a) {
      for (std::size_t c = 0; c < dv; ++c) {
        carried[bi](a, c) = fade[bi - 1][a] * carried[bi - 1](a, c) + local[bi - 1](a, c);
      }
    }
  }

  // Phase 3: inter-block terms.
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 1; bi < as_index(blocks); ++bi) {
    const std::size_t start = static_cast<std::size_t>(bi) * block;
    const std::size_t m = std::min(block, n - start);
    const Matrix& state = carried[bi];
    std::vector<double> ratio(dk, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
      auto q = og.row(start + i);
      auto f = fg.row(start + i);
      auto o = out.row(start + i);
      for (std::size_t a = 0; a < dk; ++a) ratio[a] *= f[a];
      for (std::size_t c = 0; c < dv; ++c) {
        double acc = 0.0;
        for (std::size_t a = 0; a < dk; ++a) acc += q[a] * ratio[a] * state(a, c);
        o[c] += acc;
      }
    }
  }
  return out;
}

}  // namespace scaling_lab::mixer::omp
