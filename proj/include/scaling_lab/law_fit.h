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


#ifndef SCALING_LAB_LAW_FIT_H_
#define SCALING_LAB_LAW_FIT_H_

// Pure power laws L(X) = beta * X^alpha fitted by least squares in log-log
// space, plus compute-optimal envelope extraction and allocation fits.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scaling_lab/arch_cost.h"

namespace scaling_lab::fit {

struct PowerLawFit {
  double alpha = 0.0;
  double beta = 1.0;
  double r_squared = 0.0;  // of the log-log regression
  std::size_t n_points = 0;

  friend bool operator==(const PowerLawFit&, const PowerLawFit&) = default;
};

struct XY {
  double x = 0.0;
  double y = 0.0;
};

// Throws DegenerateData for fewer than two points or all-equal x, and
// InvalidArgument for a non-positive coordinate.
PowerLawFit fit_power_law(std::span<const XY> points);

double eval_power_law(const PowerLawFit& fit, double x);

struct LossPoint {
  std::string run_id;
  double flops = 0.0;   // cumulative training FLOPs C
  double tokens = 0.0;  // tokens seen D
  double params = 0.0;  // non-embedding parameters N
  double loss = 0.0;
};

struct EnvelopePoint {
  double flops = 0.0;  // geometric centre of the bin
  double loss = 0.0;   // minimum loss in the bin
  double n_at_min = 0.0;
  double d_at_min = 0.0;

  friend bool operator==(const EnvelopePoint&, const EnvelopePoint&) = default;
};

inline constexpr std::size_t kDefaultBinsPerDecade = 40;

// Log-uniform FLOPs bins starting at the smallest C, `bins_per_decade` per
// factor of ten. Each non-empty bin yields its minimum-loss point; ties go to
// the smallest N, then the smallest D. Result is ordered by flops.
std::vector<EnvelopePoint> compute_envelope(std::span<const LossPoint> points,
                                            std::size_t bins_per_decade = kDefaultBinsPerDecade);

struct AllocationFit {
  PowerLawFit n_opt;  // N_opt = beta * C^a
  PowerLawFit d_opt;  // D_opt = beta * C^b
};

AllocationFit fit_allocation(std::span<const EnvelopePoint> envelope);

// L(C) over the envelope.
PowerLawFit fit_loss_envelope(std::span<const EnvelopePoint> envelope);

// Loss family L(N, D) = E + A / N^alpha_n + B / D^beta_d.
struct LossFamily {
  double irreducible = 1.69;    // E
  double size_coef = 406.4;     // A
  double data_coef = 410.7;     // B
  double size_exponent = 0.34;  // alpha_n
  double data_exponent = 0.28;  // beta_d

  double loss(double params, double tokens) const;
};

struct SynthConfig {
  LossFamily family;
  std::vector<double> model_sizes;
  double flops_min = 1e17;
  double flops_max = 1e22;
  std::size_t points_per_decade = 20;
  double noise_sigma = 0.0;  // multiplicative log-normal
  std::uint64_t seed = 0;
};

// FLOPs accounting used for synthetic runs and for logs without a flops
// column: the leading term of every closed form, C = 6 N D.
double training_flops(double params, double tokens);

std::vector<double> flops_grid(const SynthConfig& config);

// One run per model size; each run visits every C of the grid with
// D = C / (6N). Throws InvalidArgument for non-positive constants.
std::vector<LossPoint> synth_runs(const SynthConfig& config);

struct GroundTruth {
  std::vector<double> flops;   // the grid
  std::vector<double> n_opt;   // minimizing model size per C
  std::vector<double> d_opt;
  double a = 0.0;  // slope of ln N_opt vs ln C
  double b = 0.0;  // slope of ln D_opt vs ln C
};

// Brute-force scan of the noiseless family over (model size, grid C).
GroundTruth brute_force_optimum(const SynthConfig& config);

enum class LawQuantity { kLoss, kNOpt, kDOpt };

struct PublishedLaw {
  PowerLawFit fit;
  std::string beta_text;   // as printed, e.g. "3.7087" or "1.82e8"
  std::string alpha_text;  // as printed, e.g. "-0.0798"
};

// The twelve published fits, keyed by architecture and quantity.
const std::map<std::pair<arch::ArchKind, LawQuantity>, PublishedLaw>& table2_laws();
const PublishedLaw& table2_law(arch::ArchKind kind, LawQuantity quantity);
std::string_view quantity_name(LawQuantity quantity);

}  // namespace scaling_lab::fit

#endif  // SCALING_LAB_LAW_FIT_H_
