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


#include "scaling_lab/block.h"

#include <cmath>
#include <numbers>
#include <string>

#include "scaling_lab/cost_labels.h"
#include "scaling_lab/errors.h"
#include "scaling_lab/mixers_omp.h"

namespace scaling_lab::mixer {
namespace {

using arch::ArchKind;

constexpr double kNormEps = 1e-6;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double swish(double x) { return x * sigmoid(x); }

template <typename F>
void apply(Matrix& m, F f) {
  for (double& x : m.data()) x = f(x);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(rows)));
  Matrix m(rows, cols);
  for (double& x : m.data()) x = normal(rng);
  return m;
}

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols,
                  const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeMismatch(std::string("block weight ") + name + " is " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        ", expected " + std::to_string(rows) + "x" +
                        std::to_string(cols));
  }
}

// Rotary embedding on consecutive channel pairs of one head, base 10000.
void apply_rope(Matrix& x) {
  const std::size_t dh = x.cols();
  for (std::size_t t = 0; t < x.rows(); ++t) {
    for (std::size_t c = 0; c + 1 < dh; c += 2) {
      const double freq = std::pow(10000.0, -static_cast<double>(c) / static_cast<double>(dh));
      const double angle = static_cast<double>(t) * freq;
      const double cs = std::cos(angle), sn = std::sin(angle);
      const double a = x(t, c), b = x(t, c + 1);
      x(t, c) = a * cs - b * sn;
      x(t, c + 1) = a * sn + b * cs;
    }
  }
}

struct Kernels {
  const BlockOptions& options;

  FlopCounter* counter() const { return options.parallel ? nullptr : options.counter; }

  Matrix mm(const Matrix& a, const Matrix& b, const char* label) const {
    charge(counter(), label, 2 * a.rows() * a.cols() * b.cols());
    return options.parallel ? omp::matmul(a, b) : matmul(a, b);
  }
  Matrix softmax(const Matrix& q, const Matrix& k, const Matrix& v) const {
    return options.parallel ? omp::softmax_attention(q, k, v)
                            : softmax_attention(q, k, v, true, counter());
  }
  Matrix linear(const Matrix& q, const Matrix& k, const Matrix& v, double decay,
                std::size_t block) const {
    return options.parallel ? omp::lightning_chunked(q, k, v, decay, block)
                            : lightning_chunked(q, k, v, decay, block, counter());
  }
  Matrix fla(const Matrix& og, const Matrix& fg, const Matrix& h,
             std::size_t block) const {
    return options.parallel ? omp::fla_chunked(og, fg, h, block)
                            : fla_chunked(og, fg, h, block, counter());
  }
};

// sigmoid(xn W_down W_up), charged as one "output gate" item.
Matrix low_rank_gate(const Matrix& xn, const BlockWeights& w, const Kernels& k) {
  Matrix g = k.mm(k.mm(xn, w.gate_down, labels::kOutputGate), w.gate_up,
                  labels::kOutputGate);
  apply(g, sigmoid);
  return g;
}

// norm(concat) .* gate, then the output projection.
Matrix gated_output(const Matrix& heads_out, const Matrix* gate,
                    const BlockWeights& w, const Kernels& k) {
  Matrix y = rms_norm(heads_out);
  if (gate != nullptr) {
    auto g = gate->data();
    auto yd = y.data();
    for (std::size_t i = 0; i < yd.size(); ++i) yd[i] *= g[i];
    charge(k.counter(), labels::kGating, yd.size());
  }
  return k.mm(y, w.wo, labels::kOutputProjection);
}

Matrix token_mixer(const Matrix& xn, const BlockWeights& w, std::size_t block,
                   const Kernels& k) {
  const std::size_t n = xn.rows(), d = xn.cols();
  const std::size_t dh = d / w.heads;
  Matrix concat(n, d);

  switch (w.kind) {
    case ArchKind::kSoftmaxAttention: {
      Matrix q = k.mm(xn, w.wq, labels::kQkvProjection);
      Matrix kk = k.mm(xn, w.wk, labels::kQkvProjection);
      Matrix v = k.mm(xn, w.wv, labels::kQkvProjection);
      for (std::size_t i = 0; i < w.heads; ++i) {
        Matrix qi = q.col_slice(i * dh, dh), ki = kk.col_slice(i * dh, dh);
        if (w.rope) {
          apply_rope(qi);
          apply_rope(ki);
          charge(k.counter(), labels::kRope, 2 * (qi.data().size() + ki.data().size()));
        }
        concat.set_col_slice(i * dh, k.softmax(qi, ki, v.col_slice(i * dh, dh)));
      }
      return k.mm(concat, w.wo, labels::kOutputProjection);
    }

    case ArchKind::kTnl:
    case ArchKind::kCosFormer2: {
      Matrix q = k.mm(xn, w.wq, labels::kQkvProjection);
      Matrix kk = k.mm(xn, w.wk, labels::kQkvProjection);
      Matrix v = k.mm(xn, w.wv, labels::kQkvProjection);
      apply(q, swish);
      apply(kk, swish);
      const Matrix gate = low_rank_gate(xn, w, k);
      for (std::size_t i = 0; i < w.heads; ++i) {
        Matrix qi = q.col_slice(i * dh, dh), ki = kk.col_slice(i * dh, dh);
        double decay = 1.0;
        if (w.kind == ArchKind::kTnl) {
          decay = w.decays[i];
        } else {
          auto theta = w.lrpe_theta.row(i);
          qi = lrpe_transform(qi, theta, k.counter());
          ki = lrpe_transform(ki, theta, k.counter());
        }
        concat.set_col_slice(i * dh, k.linear(qi, ki, v.col_slice(i * dh, dh), decay, block));
      }
      return gated_output(concat, &gate, w, k);
    }

    case ArchKind::kHgrn2: {
      Matrix og = k.mm(xn, w.wq, labels::kHiddenStateProjection);
      Matrix fg = k.mm(xn, w.wk, labels::kHiddenStateProjection);
      Matrix h = k.mm(xn, w.wv, labels::kHiddenStateProjection);
      for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t c = 0; c < d; ++c) {
          const double lr = w.lower_bound[c];
          fg(t, c) = lr + (1.0 - lr) * sigmoid(fg(t, c));
        }
      }
      // Lr + (1 - Lr) * s costs 3 per entry; forming the key 1 - Fg costs 1.
      charge(k.counter(), labels::kForgetGate, 4 * n * d);
      for (std::size_t i = 0; i < w.heads; ++i) {
        concat.set_col_slice(i * dh, k.fla(og.col_slice(i * dh, dh), fg.col_slice(i * dh, dh),
                                           h.col_slice(i * dh, dh), block));
      }
      return gated_output(concat, nullptr, w, k);
    }
  }
  return concat;
}

}  // namespace

std::vector<double> default_tnl_decays(std::size_t heads) {
  std::vector<double> decays(heads);
  for (std::size_t i = 0; i < heads; ++i) {
    decays[i] = 1.0 - std::ldexp(1.0, -static_cast<int>(i + 1));
  }
  return decays;
}

BlockWeights random_block_weights(ArchKind kind, std::size_t dim,
                                  std::size_t heads, std::size_t glu_dim,
                                  std::size_t gate_rank, std::mt19937_64& rng,
                                  std::size_t tpe_dim) {
  if (heads == 0 || dim % heads != 0) {
    throw InvalidShape("random_block_weights: d mod h must be 0");
  }
  const std::size_t dh = dim / heads;
  BlockWeights w;
  w.kind = kind;
  w.heads = heads;
  w.wq = random_matrix(dim, dim, rng);
  w.wk = random_matrix(dim, dim, rng);
  w.wv = random_matrix(dim, dim, rng);
  w.wo = random_matrix(dim, dim, rng);
  w.w_u = random_matrix(dim, glu_dim, rng);
  w.w_v = random_matrix(dim, glu_dim, rng);
  w.w_down = random_matrix(glu_dim, dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind) {
    case ArchKind::kSoftmaxAttention:
      break;
    case ArchKind::kTnl:
      w.gate_down = random_matrix(dim, gate_rank, rng);
      w.gate_up = random_matrix(gate_rank, dim, rng);
      w.decays = default_tnl_decays(heads);
      break;
    case ArchKind::kHgrn2:
      w.lower_bound.resize(dim);
      for (double& lr : w.lower_bound) lr = 0.9 * unit(rng);
      break;
    case ArchKind::kCosFormer2:
      w.gate_down = random_matrix(dim, gate_rank, rng);
      w.gate_up = random_matrix(gate_rank, dim, rng);
      w.lrpe_theta = Matrix(heads, dh);
      for (double& th : w.lrpe_theta.data()) th = std::numbers::pi * unit(rng);
      if (tpe_dim > 0) {
        TpeWeights tpe;
        tpe.up = random_matrix(dim, tpe_dim, rng);
        tpe.down = random_matrix(dim, tpe_dim, rng);
        tpe.decay.resize(tpe_dim);
        for (double& a : tpe.decay) a = 0.95 * unit(rng);
        w.tpe = std::move(tpe);
      }
      break;
  }
  return w;
}

void validate_block_weights(const BlockWeights& w, std::size_t d) {
  if (w.heads == 0 || d % w.heads != 0) {
    throw ShapeMismatch("block weights: head count must divide d");
  }
  const std::size_t dh = d / w.heads;
  expect_shape(w.wq, d, d, "wq");
  expect_shape(w.wk, d, d, "wk");
  expect_shape(w.wv, d, d, "wv");
  expect_shape(w.wo, d, d, "wo");
  const std::size_t g = w.w_u.cols();
  expect_shape(w.w_u, d, g, "w_u");
  expect_shape(w.w_v, d, g, "w_v");
  expect_shape(w.w_down, g, d, "w_down");
  if (w.kind == ArchKind::kTnl || w.kind == ArchKind::kCosFormer2) {
    const std::size_t t = w.gate_down.cols();
    expect_shape(w.gate_down, d, t, "gate_down");
    expect_shape(w.gate_up, t, d, "gate_up");
  }
  if (w.kind == ArchKind::kTnl) {
    if (w.decays.size() != w.heads) throw ShapeMismatch("block weights: one decay per head");
    for (double decay : w.decays) {
      if (!(decay > 0.0 && decay <= 1.0)) {
        throw InvalidArgument("block weights: decay outside (0, 1]");
      }
    }
  }
  if (w.kind == ArchKind::kCosFormer2) {
    expect_shape(w.lrpe_theta, w.heads, dh, "lrpe_theta");
    if (w.tpe) {
      expect_shape(w.tpe->up, d, w.tpe->decay.size(), "tpe.up");
      expect_shape(w.tpe->down, d, w.tpe->decay.size(), "tpe.down");
    }
  }
  if (w.kind == ArchKind::kHgrn2) {
    if (w.lower_bound.size() != d) throw ShapeMismatch("block weights: lower bound needs d entries");
    for (double lr : w.lower_bound) {
      if (!(lr >= 0.0 && lr <= 1.0)) {
        throw InvalidArgument("block weights: lower bound outside [0, 1]");
      }
    }
  }
}

Matrix rms_norm(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (std::size_t t = 0; t < x.rows(); ++t) {
    auto row = x.row(t);
    double ms = 0.0;
    for (double v : row) ms += v * v;
    ms /= static_cast<double>(row.size());
    const double inv = 1.0 / std::sqrt(ms + kNormEps);
    auto dst = out.row(t);
    for (std::size_t c = 0; c < row.size(); ++c) dst[c] = row[c] * inv;
  }
  return out;
}

Matrix block_forward(const Matrix& x, const BlockWeights& w,
                     const BlockOptions& options) {
  const std::size_t d = x.cols();
  validate_block_weights(w, d);
  const std::size_t block = options.block_size > 0 ? options.block_size : d / w.heads;
  Kernels k{options};

  Matrix input = x;
  if (w.kind == ArchKind::kCosFormer2 && w.tpe) input = tpe_transform(x, *w.tpe, k.counter());

  // Token mixer with residual.
  Matrix o = token_mixer(rms_norm(input), w, block, k);
  {
    auto od = o.data();
    auto id = input.data();
    for (std::size_t i = 0; i < od.size(); ++i) od[i] += id[i];
  }

  // GLU channel mixer with residual.
  const Matrix on = rms_norm(o);
  Matrix u = k.mm(on, w.w_u, labels::kUvProjection);
  Matrix v = k.mm(on, w.w_v, labels::kUvProjection);
  if (w.kind == ArchKind::kSoftmaxAttention) apply(v, swish);
  {
    auto ud = u.data();
    auto vd = v.data();
    for (std::size_t i = 0; i < ud.size(); ++i) ud[i] *= vd[i];
    charge(k.counter(), labels::kGluGating, ud.size());
  }
  Matrix out = k.mm(u, w.w_down, labels::kDownProjection);
  auto dst = out.data();
  auto od = o.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += od[i];
  return out;
}

}  // namespace scaling_lab::mixer
