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


#ifndef SCALING_LAB_COMMANDS_H_
#define SCALING_LAB_COMMANDS_H_

// Subcommand bodies. Each returns a process exit code and writes human
// output to `out`, diagnostics to `err`.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scaling_lab/law_fit.h"

namespace scaling_lab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitParseError = 2,
  kExitInvalidConfig = 3,
  kExitDegenerateData = 4,
};

struct CostOptions {
  std::string config_path;
  bool include_embedding = false;
  bool breakdown = false;
  bool closed_form = false;
};
int run_cost(const CostOptions& options, std::ostream& out, std::ostream& err);

struct FitOptions {
  std::string log_csv;
  std::size_t bins_per_decade = fit::kDefaultBinsPerDecade;
  std::string out_report;
  std::string out_svg;
  std::string overlay_arch;  // empty for none
  double overlay_flops_unit = 8.64e19;
};
int run_fit(const FitOptions& options, std::ostream& out, std::ostream& err);

struct NiahOptions {
  std::string grid_csv;
  std::string units = "percent";  // or "raw"
  double alpha_d = 1.25;
  double alpha_c = 1.25;
  double w_d0 = 1.0;
  double w_c0 = 1.0;
  std::optional<double> threshold;  // midpoint of the value range when unset
  std::string out_svg;
  std::string out_report;
  std::string mode_label;
};
int run_niah(const NiahOptions& options, std::ostream& out, std::ostream& err);

struct SynthOptions {
  fit::LossFamily family;
  std::vector<double> sizes{7e7, 1.6e8, 4.1e8, 1e9, 3e9, 7e9};
  std::uint64_t seed = 0;
  double flops_min = 1e17;
  double flops_max = 1e22;
  std::size_t points_per_decade = 20;
  double noise_sigma = 0.0;
  std::string out_csv;
};
int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

struct MixerCheckOptions {
  std::uint64_t seed = 0;
  std::size_t instances = 200;
  std::size_t max_seq_len = 64;
  std::size_t max_head_dim = 16;
  std::optional<double> tolerance;
  std::string dump_dir;
};
int run_mixer_check(const MixerCheckOptions& options, std::ostream& out, std::ostream& err);

}  // namespace scaling_lab::cli

#endif  // SCALING_LAB_COMMANDS_H_
