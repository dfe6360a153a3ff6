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


#include "scaling_lab/commands.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scaling_lab/arch_cost.h"
#include "scaling_lab/equivalence_suite.h"
#include "scaling_lab/errors.h"
#include "scaling_lab/fit_plot.h"
#include "scaling_lab/niah.h"
#include "scaling_lab/report.h"
#include "scaling_lab/training_log.h"

namespace scaling_lab::cli {
namespace {

using nlohmann::json;

std::string format(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const DegenerateData& e) {
    err << "degenerate data: " << e.what() << '\n';
    return kExitDegenerateData;
  } catch (const InvalidShape& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const ShapeMismatch& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPropertyFailure;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InvalidArgument("cannot write " + path);
}

// Cost config --------------------------------------------------------------

struct CostConfig {
  std::string name;
  arch::ArchKind kind;
  arch::ModelShape shape;
};

std::int64_t int_key(const json& doc, const std::string& key, bool required) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) throw ParseError("config: missing key '" + key + "'");
    return 0;
  }
  if (!it->is_number_integer()) throw ParseError("config: key '" + key + "' must be an integer");
  return it->get<std::int64_t>();
}

CostConfig load_cost_config(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("config " + path + ": top level must be an object");
  static const std::map<std::string, bool> kKeys = {
      {"name", false}, {"arch", true}, {"b", true}, {"n", true}, {"l", true}, {"d", true},
      {"h", true},     {"g", true},    {"v", true}, {"t", false}, {"B", false}, {"e", false}};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kKeys.count(key)) throw ParseError("config: unknown key '" + key + "'");
  }
  CostConfig c;
  auto arch_it = doc.find("arch");
  if (arch_it == doc.end()) throw ParseError("config: missing key 'arch'");
  if (!arch_it->is_string()) throw ParseError("config: key 'arch' must be a string");
  try {
    c.kind = arch::parse_arch(arch_it->get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("config: key 'arch': ") + e.what());
  }
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("config: key 'name' must be a string");
    c.name = it->get<std::string>();
  }
  c.shape.batch = int_key(doc, "b", true);
  c.shape.seq_len = int_key(doc, "n", true);
  c.shape.layers = int_key(doc, "l", true);
  c.shape.dim = int_key(doc, "d", true);
  c.shape.heads = int_key(doc, "h", true);
  c.shape.glu_dim = int_key(doc, "g", true);
  c.shape.vocab = int_key(doc, "v", true);
  c.shape.gate_rank = int_key(doc, "t", false);
  c.shape.block = int_key(doc, "B", false);
  c.shape.tpe_dim = int_key(doc, "e", false);
  arch::validate(c.shape);
  return c;
}

std::string scope_name(arch::CostScope s) {
  return s == arch::CostScope::kPerLayer ? "per-layer" : "per-model";
}

}  // namespace

int run_cost(const CostOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CostConfig c = load_cost_config(o.config_path);
    const std::int64_t params = arch::param_count(c.kind, c.shape, o.include_embedding);
    const arch::CostBreakdown breakdown = arch::flops_breakdown(c.kind, c.shape, o.include_embedding);
    const arch::Count total = arch::flops_per_step(c.kind, c.shape, o.include_embedding);
    if (!c.name.empty()) out << "config          " << c.name << '\n';
    out << "arch            " << arch::arch_name(c.kind) << '\n';
    out << "params          " << params << " (" << format("%.1f", params / 1e6) << "M"
        << (o.include_embedding ? ", with embedding" : ", non-embedding") << ")\n";
    out << "flops/step      " << arch::to_string(total) << " ("
        << format("%.2f", arch::to_double(total) / 1e15) << " PFLOPs)\n";
    out << "tokens/step     " << arch::tokens_per_step(c.shape) << '\n';
    if (o.closed_form) {
      const arch::Count cf = arch::closed_form_flops(c.kind, c.shape);
      out << "closed form     " << arch::to_string(cf) << " ("
          << format("%.2f", arch::to_double(cf) / 1e15) << " PFLOPs, non-embedding)\n";
    }
    if (o.breakdown) {
      out << "\nbreakdown (training FLOPs per step)\n";
      arch::Count sum = 0;
      for (const arch::CostItem& item : breakdown.items) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-34s %-10s %s\n", item.label.c_str(),
                      scope_name(item.scope).c_str(), arch::to_string(item.flops).c_str());
        out << line;
        sum += item.flops;
      }
      char line[160];
      std::snprintf(line, sizeof line, "  %-34s %-10s %s\n", "total", "",
                    arch::to_string(sum).c_str());
      out << line;
    }
    return kExitOk;
  });
}

int run_fit(const FitOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.bins_per_decade == 0) throw InvalidArgument("bins per decade must be >= 1");
    std::optional<PlotOverlay> overlay;
    if (!o.overlay_arch.empty()) {
      if (!(o.overlay_flops_unit > 0.0)) throw InvalidArgument("overlay flops unit must be positive");
      overlay = PlotOverlay{arch::parse_arch(o.overlay_arch), o.overlay_flops_unit};
    }
    const std::string text = read_file(o.log_csv);
    std::istringstream in(text);
    const TrainingLog log = read_training_log(in);
    const std::vector<fit::LossPoint> points = to_loss_points(log);
    const std::vector<fit::EnvelopePoint> envelope = fit::compute_envelope(points, o.bins_per_decade);

    auto named = [](const char* name, auto&& fn) {
      try {
        return fn();
      } catch (const DegenerateData& e) {
        throw DegenerateData(std::string(name) + " fit failed: " + e.what());
      }
    };
    const fit::PowerLawFit loss_fit = named("L(C)", [&] { return fit::fit_loss_envelope(envelope); });
    const fit::AllocationFit alloc = named("N_opt(C)/D_opt(C)", [&] { return fit::fit_allocation(envelope); });

    Report report;
    report.metadata.input_digests["log"] = sha256_hex(text);
    report.metadata.config = json{{"command", "fit"},
                                  {"log", o.log_csv},
                                  {"bins_per_decade", o.bins_per_decade},
                                  {"overlay_arch", o.overlay_arch},
                                  {"overlay_flops_unit", o.overlay_flops_unit}};
    report.fits = {{"L(C)", loss_fit}, {"N_opt(C)", alloc.n_opt}, {"D_opt(C)", alloc.d_opt}};
    report.envelope = envelope;
    report.table2_overlay = overlay.has_value();

    out << "rows            " << log.rows.size() << '\n';
    out << "envelope points " << envelope.size() << '\n';
    for (const NamedFit& f : report.fits) {
      char line[160];
      std::snprintf(line, sizeof line, "%-15s beta=%.6g alpha=%.6f r2=%.6f\n", f.name.c_str(),
                    f.fit.beta, f.fit.alpha, f.fit.r_squared);
      out << line;
    }
    if (!o.out_report.empty()) write_text(o.out_report, serialize_report(report));
    if (!o.out_svg.empty()) {
      write_text(o.out_svg, render_fit_plot(points, envelope, loss_fit, overlay));
    }
    return kExitOk;
  });
}

int run_niah(const NiahOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    niah::Units units;
    if (o.units == "percent") {
      units = niah::Units::kPercent;
    } else if (o.units == "raw") {
      units = niah::Units::kRawScore;
    } else {
      throw InvalidArgument("units must be 'percent' or 'raw', got '" + o.units + "'");
    }
    const std::string text = read_file(o.grid_csv);
    std::istringstream in(text);
    const niah::NiahGrid grid = niah::read_grid_csv(in, units);
    const niah::WeightMap weights = niah::build_weight_map(
        grid.depths.size(), grid.lengths.size(), o.w_d0, o.alpha_d, o.w_c0, o.alpha_c);
    const double threshold = o.threshold.value_or(niah::default_threshold(units));

    NiahReport metrics;
    metrics.mode_label = o.mode_label;
    metrics.units = o.units;
    metrics.parameters = {{"alpha_c", o.alpha_c}, {"alpha_d", o.alpha_d},
                          {"threshold", threshold}, {"w_c0", o.w_c0}, {"w_d0", o.w_d0}};
    metrics.values["weighted_avg"] = niah::weighted_avg(grid, weights);
    metrics.values["niah_score"] = niah::niah_score(grid, threshold, weights);

    if (!o.mode_label.empty()) out << "mode            " << o.mode_label << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %12s %12s\n", "length", "acc@length", "acc<=length");
    out << line;
    for (double length : grid.lengths) {
      const double at = niah::acc_at_length(grid, length);
      const double leq = niah::acc_leq_length(grid, length);
      const std::string key = format("%.17g", length);
      metrics.values["acc@" + key] = at;
      metrics.values["acc<=" + key] = leq;
      std::snprintf(line, sizeof line, "%-12s %12.4f %12.4f\n", format("%g", length).c_str(), at, leq);
      out << line;
    }
    std::snprintf(line, sizeof line, "weighted avg    %.4f\nniah score      %.4f\n",
                  metrics.values["weighted_avg"], metrics.values["niah_score"]);
    out << line;

    if (!o.out_svg.empty()) write_text(o.out_svg, niah::render_heatmap(grid, o.mode_label));
    if (!o.out_report.empty()) {
      Report report;
      report.metadata.input_digests["grid"] = sha256_hex(text);
      report.metadata.config = json{{"command", "niah"},       {"grid", o.grid_csv},
                                    {"units", o.units},        {"alpha_d", o.alpha_d},
                                    {"alpha_c", o.alpha_c},    {"w_d0", o.w_d0},
                                    {"w_c0", o.w_c0},          {"threshold", threshold},
                                    {"mode_label", o.mode_label}};
      report.niah = metrics;
      write_text(o.out_report, serialize_report(report));
    }
    return kExitOk;
  });
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    fit::SynthConfig config;
    config.family = o.family;
    config.model_sizes = o.sizes;
    config.seed = o.seed;
    config.flops_min = o.flops_min;
    config.flops_max = o.flops_max;
    config.points_per_decade = o.points_per_decade;
    config.noise_sigma = o.noise_sigma;
    const std::vector<fit::LossPoint> runs = fit::synth_runs(config);
    const fit::GroundTruth truth = fit::brute_force_optimum(config);
    std::ostringstream csv;
    write_training_log(csv, log_from_runs(runs, "synth"));
    if (o.out_csv.empty()) {
      out << csv.str();
    } else {
      write_text(o.out_csv, csv.str());
    }
    char line[160];
    std::snprintf(line, sizeof line, "ground_truth a=%.10f b=%.10f\n", truth.a, truth.b);
    (o.out_csv.empty() ? err : out) << line;
    return kExitOk;
  });
}

int run_mixer_check(const MixerCheckOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.tolerance && !(*o.tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
    if (o.instances == 0 || o.max_seq_len == 0 || o.max_head_dim == 0) {
      throw InvalidArgument("instances, max sequence length and max head dim must be >= 1");
    }
    mixer::SuiteConfig config;
    config.seed = o.seed;
    config.instances = o.instances;
    config.max_seq_len = o.max_seq_len;
    config.max_head_dim = o.max_head_dim;
    config.tolerance = o.tolerance;
    config.dump_dir = o.dump_dir;
    const auto results = mixer::run_equivalence_suite(config);
    bool all = true;
    char line[200];
    std::snprintf(line, sizeof line, "%-36s %8s %12s %12s  %s\n", "property", "cases",
                  "max_error", "tolerance", "status");
    out << line;
    for (const auto& r : results) {
      std::snprintf(line, sizeof line, "%-36s %8zu %12.4e %12.4e  %s\n", r.name.c_str(), r.cases,
                    r.max_error, r.tolerance, r.passed ? "PASS" : "FAIL");
      out << line;
      all = all && r.passed;
    }
    out << (all ? "all properties passed\n" : "property failures\n");
    return all ? kExitOk : kExitPropertyFailure;
  });
}

}  // namespace scaling_lab::cli
