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


#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scaling_lab/commands.h"
#include "scaling_lab/report.h"
#include "scaling_lab/rng.h"

namespace cli = scaling_lab::cli;

int main(int argc, char** argv) {
  CLI::App app{"scaling-lab: cost models, scaling-law fits and retrieval metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::kToolVersion));

  cli::CostOptions cost;
  auto* cost_cmd = app.add_subcommand("cost", "Parameters and training FLOPs per step");
  cost_cmd->add_option("--config", cost.config_path, "Model config JSON")->required();
  cost_cmd->add_flag("--include-embedding", cost.include_embedding);
  cost_cmd->add_flag("--breakdown", cost.breakdown, "Print every cost term");
  cost_cmd->add_flag("--closed-form", cost.closed_form, "Also print the closed-form total");

  cli::FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Envelope and power-law fits from a training log");
  fit_cmd->add_option("--log", fit.log_csv, "Training log CSV")->required();
  fit_cmd->add_option("--bins-per-decade", fit.bins_per_decade);
  fit_cmd->add_option("--report", fit.out_report, "Report JSON output path");
  fit_cmd->add_option("--svg", fit.out_svg, "Plot SVG output path");
  fit_cmd->add_option("--overlay-table2", fit.overlay_arch, "Published law to overlay (llama|tnl|hgrn2|cosformer2)");
  fit_cmd->add_option("--overlay-flops-unit", fit.overlay_flops_unit,
                      "FLOPs per unit of C in the published laws");

  cli::NiahOptions niah;
  std::optional<double> threshold;
  auto* niah_cmd = app.add_subcommand("niah", "Needle-in-a-haystack metrics and heatmap");
  niah_cmd->add_option("--grid", niah.grid_csv, "Depth x length grid CSV")->required();
  niah_cmd->add_option("--units", niah.units, "percent (0-100) or raw (1-10)");
  niah_cmd->add_option("--alpha-d", niah.alpha_d);
  niah_cmd->add_option("--alpha-c", niah.alpha_c);
  niah_cmd->add_option("--w-d0", niah.w_d0);
  niah_cmd->add_option("--w-c0", niah.w_c0);
  niah_cmd->add_option("--threshold", threshold);
  niah_cmd->add_option("--svg", niah.out_svg, "Heatmap SVG output path");
  niah_cmd->add_option("--report", niah.out_report, "Report JSON output path");
  niah_cmd->add_option("--mode", niah.mode_label, "Label such as easy or standard");

  cli::SynthOptions synth;
  std::optional<std::uint64_t> synth_seed;
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic training log with a known optimum");
  synth_cmd->add_option("--out", synth.out_csv, "Output CSV path (stdout when omitted)");
  synth_cmd->add_option("--sizes", synth.sizes, "Model sizes")->delimiter(',');
  synth_cmd->add_option("--seed", synth_seed);
  synth_cmd->add_option("--E", synth.family.irreducible);
  synth_cmd->add_option("--A", synth.family.size_coef);
  synth_cmd->add_option("--B", synth.family.data_coef);
  synth_cmd->add_option("--alpha", synth.family.size_exponent);
  synth_cmd->add_option("--beta", synth.family.data_exponent);
  synth_cmd->add_option("--flops-min", synth.flops_min);
  synth_cmd->add_option("--flops-max", synth.flops_max);
  synth_cmd->add_option("--points-per-decade", synth.points_per_decade);
  synth_cmd->add_option("--noise", synth.noise_sigma, "Log-normal sigma");

  cli::MixerCheckOptions mixer;
  std::optional<std::uint64_t> mixer_seed;
  std::optional<double> tolerance;
  auto* mixer_cmd = app.add_subcommand("mixer-check", "Token-mixer equivalence properties");
  mixer_cmd->add_option("--seed", mixer_seed);
  mixer_cmd->add_option("--instances", mixer.instances);
  mixer_cmd->add_option("--max-seq-len", mixer.max_seq_len);
  mixer_cmd->add_option("--max-head-dim", mixer.max_head_dim);
  mixer_cmd->add_option("--tolerance", tolerance, "Override every tolerance");
  mixer_cmd->add_option("--dump-dir", mixer.dump_dir, "Write instance 0 tensors as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParseError;
  }

  const std::uint64_t env_seed = scaling_lab::seed_from_env();
  if (*cost_cmd) return cli::run_cost(cost, std::cout, std::cerr);
  if (*fit_cmd) return cli::run_fit(fit, std::cout, std::cerr);
  if (*niah_cmd) {
    niah.threshold = threshold;
    return cli::run_niah(niah, std::cout, std::cerr);
  }
  if (*synth_cmd) {
    synth.seed = synth_seed.value_or(env_seed);
    return cli::run_synth(synth, std::cout, std::cerr);
  }
  mixer.seed = mixer_seed.value_or(env_seed);
  mixer.tolerance = tolerance;
  return cli::run_mixer_check(mixer, std::cout, std::cerr);
}
