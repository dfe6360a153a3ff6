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


#include "scaling_lab/equivalence_suite.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>

#include "scaling_lab/matrix.h"
#include "scaling_lab/mixers.h"
#include "scaling_lab/mixers_omp.h"
#include "scaling_lab/rng.h"

namespace scaling_lab::mixer {
namespace {

enum Property : std::size_t {
  kSoftmaxRows,
  kGtbStabilized,
  kGtbNaive,
  kGtbNormalizer,
  kLinearRecurrentQuadratic,
  kLinearChunked,
  kLrpeShift,
  kLrpeNorm,
  kFlaChunked,
  kLowerBound,
  kOmpKernels,
  kPropertyCount,
};

struct PropertySpec {
  const char* name;
  double tolerance;
};

constexpr std::array<PropertySpec, kPropertyCount> kSpecs = {{
    {"softmax rows sum to one", 1e-12},
    {"gtb (stabilized) vs softmax", 1e-10},
    {"gtb (naive) vs softmax", 1e-10},
    {"gtb normalizer strictly increasing", 0.0},
    {"linear attn recurrent vs quadratic", 1e-8},
    {"linear attn chunked vs recurrent", 1e-8},
    {"lrpe relative-shift identity", 1e-10},
    {"lrpe per-channel norm", 1e-12},
    {"fla chunked vs step", 1e-10},
    {"hgrn2 lower bound / gate range", 0.0},
    {"openmp kernels vs serial", 1e-10},
}};

constexpr std::array<double, 4> kDecays = {0.5, 0.9, 0.99, 1.0};

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                     double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = dist(rng);
  return m;
}

std::array<std::size_t, 4> block_sizes(std::size_t n) {
  return {1, 2, std::max<std::size_t>(1, n / 2), n};
}

using Errors = std::array<double, kPropertyCount>;

Errors check_instance(std::uint64_t seed, std::size_t index,
                      const SuiteConfig& config) {
  std::mt19937_64 rng = make_stream(seed, index);
  std::uniform_int_distribution<std::size_t> len(1, config.max_seq_len);
  std::uniform_int_distribution<std::size_t> width(1, config.max_head_dim);
  const std::size_t n = len(rng);
  const std::size_t dh = width(rng);

  const Matrix q = random_matrix(n, dh, rng);
  const Matrix k = random_matrix(n, dh, rng);
  const Matrix v = random_matrix(n, dh, rng);

  if (index == 0 && !config.dump_dir.empty()) {
    std::filesystem::create_directories(config.dump_dir);
    save_matrix_csv(config.dump_dir + "/q.csv", q);
    save_matrix_csv(config.dump_dir + "/k.csv", k);
    save_matrix_csv(config.dump_dir + "/v.csv", v);
  }

  Errors err{};

  const Matrix p = softmax_attention_weights(q, k, true);
  for (std::size_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (double w : p.row(t)) sum += w;
    err[kSoftmaxRows] = std::max(err[kSoftmaxRows], std::abs(sum - 1.0));
  }

  const Matrix soft = softmax_attention(q, k, v, true);
  err[kGtbStabilized] = max_abs_diff(gtb_recurrence(q, k, v, GtbMode::kStabilized), soft);
  err[kGtbNaive] = max_abs_diff(gtb_recurrence(q, k, v, GtbMode::kNaive), soft);

  for (std::size_t t = 0; t < n; ++t) {
    const auto s = gtb_normalizers(q, k, t);
    for (std::size_t j = 1; j < s.size(); ++j) {
      if (!(s[j] > s[j - 1])) err[kGtbNormalizer] = 1.0;
    }
  }

  for (double decay : kDecays) {
    const Matrix rec = lin_attn_recurrent(q, k, v, decay);
    err[kLinearRecurrentQuadratic] = std::max(
        err[kLinearRecurrentQuadratic], max_abs_diff(rec, lin_attn_quadratic(q, k, v, decay)));
    for (std::size_t b : block_sizes(n)) {
      err[kLinearChunked] = std::max(
          err[kLinearChunked], max_abs_diff(lightning_chunked(q, k, v, decay, b), rec));
      err[kOmpKernels] = std::max(
          err[kOmpKernels], max_abs_diff(omp::lightning_chunked(q, k, v, decay, b), rec));
    }
  }

  // LRPE: one query row at position s, one key row at position t.
  {
    const Matrix theta_m = random_matrix(1, dh, rng, 0.0, 3.14159);
    const auto theta = theta_m.row(0);
    std::uniform_int_distribution<std::size_t> pos(0, 4096);
    const std::size_t ps = pos(rng), pt = pos(rng);
    const Matrix qr = q.row_slice(0, 1), kr = k.row_slice(n - 1, 1);
    const std::array<std::size_t, 1> at_s{ps}, at_t{pt};
    const Matrix qe = lrpe_transform(qr, theta, at_s);
    const Matrix ke = lrpe_transform(kr, theta, at_t);
    const double lhs = dot(qe.row(0), ke.row(0));
    double rhs = 0.0;
    for (std::size_t c = 0; c < dh; ++c) {
      rhs += qr(0, c) * kr(0, c) *
             std::cos((static_cast<double>(ps) - static_cast<double>(pt)) * theta[c]);
    }
    err[kLrpeShift] = std::abs(lhs - rhs);

    const Matrix all = lrpe_transform(q, theta);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t c = 0; c < dh; ++c) {
        const double norm2 = all(t, c) * all(t, c) + all(t, dh + c) * all(t, dh + c);
        err[kLrpeNorm] = std::max(err[kLrpeNorm], std::abs(norm2 - q(t, c) * q(t, c)));
      }
    }
  }

  // HGRN2: lower bound from random logits, gates from random pre-activations.
  {
    std::uniform_int_distribution<std::size_t> layers(1, 8);
    const Matrix lr = hgrn2_lower_bound(random_matrix(layers(rng), dh, rng, -3.0, 3.0));
    for (std::size_t s = 0; s < lr.rows(); ++s) {
      for (std::size_t c = 0; c < dh; ++c) {
        const double prev = s == 0 ? 0.0 : lr(s - 1, c);
        err[kLowerBound] = std::max(err[kLowerBound], prev - lr(s, c));
        err[kLowerBound] = std::max(err[kLowerBound], lr(s, c) - 1.0);
      }
    }
    const std::size_t layer = lr.rows() / 2;
    Matrix fg = random_matrix(n, dh, rng, -6.0, 6.0);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t c = 0; c < dh; ++c) {
        const double bound = lr(layer, c);
        fg(t, c) = bound + (1.0 - bound) / (1.0 + std::exp(-fg(t, c)));
        err[kLowerBound] = std::max(err[kLowerBound], bound - fg(t, c));
        err[kLowerBound] = std::max(err[kLowerBound], fg(t, c) - 1.0);
      }
    }
    const Matrix step = fla_recurrence(q, fg, v);
    for (std::size_t b : block_sizes(n)) {
      err[kFlaChunked] = std::max(err[kFlaChunked], max_abs_diff(fla_chunked(q, fg, v, b), step));
      err[kOmpKernels] = std::max(err[kOmpKernels], max_abs_diff(omp::fla_chunked(q, fg, v, b), step));
    }
  }

  err[kOmpKernels] = std::max(err[kOmpKernels], max_abs_diff(omp::softmax_attention(q, k, v), soft));
  err[kOmpKernels] = std::max(
      err[kOmpKernels], max_abs_diff(omp::gtb_recurrence(q, k, v), gtb_recurrence(q, k, v)));
  return err;
}

}  // namespace

std::vector<PropertyResult> run_equivalence_suite(const SuiteConfig& config) {
  const std::size_t count = config.instances;
  std::vector<Errors> per_instance(count);
  const auto total = static_cast<std::int64_t>(count);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < total; ++i) {
    per_instance[static_cast<std::size_t>(i)] =
        check_instance(config.seed, static_cast<std::size_t>(i), config);
  }

  std::vector<PropertyResult> results;
  for (std::size_t p = 0; p < kPropertyCount; ++p) {
    PropertyResult r;
    r.name = kSpecs[p].name;
    r.cases = count;
    r.tolerance = config.tolerance.value_or(kSpecs[p].tolerance);
    for (const Errors& e : per_instance) r.max_error = std::max(r.max_error, e[p]);
    r.passed = count > 0 && r.max_error <= r.tolerance;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace scaling_lab::mixer
