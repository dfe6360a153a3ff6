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


#include "scaling_lab/training_log.h"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "scaling_lab/errors.h"

namespace scaling_lab::cli {
namespace {

constexpr std::array<const char*, 6> kRequired = {"run_id", "arch", "params_nonembed",
                                                  "step", "tokens_seen", "loss"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& field, const std::string& what) {
  throw ParseError("training log line " + std::to_string(line) + ", field '" + field + "': " +
                   what);
}

double number(const std::string& text, std::size_t line, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) fail(line, field, "'" + text + "' is not a finite number");
    return v;
  } catch (const std::logic_error&) {
    fail(line, field, "'" + text + "' is not a number");
  }
}

std::int64_t integer(const std::string& text, std::size_t line, const std::string& field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) fail(line, field, "'" + text + "' is not an integer");
    return v;
  } catch (const std::logic_error&) {
    fail(line, field, "'" + text + "' is not an integer");
  }
}

}  // namespace

TrainingLog read_training_log(std::istream& in) {
  TrainingLog log;
  std::map<std::string, std::size_t> column;
  std::map<std::string, std::size_t> last_of_run;
  std::string line;
  std::size_t line_no = 0;
  bool has_flops = false;
  std::size_t n_fields = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (!column.emplace(fields[i], i).second) fail(line_no, fields[i], "duplicate column");
      }
      for (const char* name : kRequired) {
        if (!column.count(name)) fail(line_no, name, "missing column");
      }
      has_flops = column.count("flops") > 0;
      n_fields = fields.size();
      continue;
    }
    if (fields.size() != n_fields) {
      throw ParseError("training log line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n_fields) + " fields, got " +
                       std::to_string(fields.size()));
    }
    LogRow row;
    row.run_id = fields[column["run_id"]];
    row.arch = fields[column["arch"]];
    if (row.run_id.empty()) fail(line_no, "run_id", "empty");
    row.params_nonembed = number(fields[column["params_nonembed"]], line_no, "params_nonembed");
    row.step = integer(fields[column["step"]], line_no, "step");
    row.tokens_seen = number(fields[column["tokens_seen"]], line_no, "tokens_seen");
    row.loss = number(fields[column["loss"]], line_no, "loss");
    if (has_flops) row.flops = number(fields[column["flops"]], line_no, "flops");
    if (!(row.params_nonembed > 0.0)) fail(line_no, "params_nonembed", "must be positive");
    if (!(row.tokens_seen > 0.0)) fail(line_no, "tokens_seen", "must be positive");
    if (!(row.loss > 0.0)) fail(line_no, "loss", "must be positive");
    if (row.flops && !(*row.flops > 0.0)) fail(line_no, "flops", "must be positive");

    auto it = last_of_run.find(row.run_id);
    if (it != last_of_run.end()) {
      const LogRow& p = log.rows[it->second];
      if (row.step <= p.step) fail(line_no, "step", "steps must strictly increase within a run");
      if (row.tokens_seen <= p.tokens_seen) {
        fail(line_no, "tokens_seen", "tokens_seen must strictly increase within a run");
      }
    }
    last_of_run[row.run_id] = log.rows.size();
    log.rows.push_back(row);
  }
  if (column.empty()) throw ParseError("training log is empty");
  if (log.rows.empty()) throw ParseError("training log has no data rows");
  return log;
}

TrainingLog load_training_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open training log " + path);
  return read_training_log(in);
}

void write_training_log(std::ostream& out, const TrainingLog& log) {
  bool has_flops = !log.rows.empty() && log.rows.front().flops.has_value();
  out << "run_id,arch,params_nonembed,step,tokens_seen,loss";
  if (has_flops) out << ",flops";
  out << '\n' << std::setprecision(17);
  for (const LogRow& r : log.rows) {
    out << r.run_id << ',' << r.arch << ',' << r.params_nonembed << ',' << r.step << ','
        << r.tokens_seen << ',' << r.loss;
    if (has_flops) out << ',' << r.flops.value_or(fit::training_flops(r.params_nonembed, r.tokens_seen));
    out << '\n';
  }
}

std::vector<fit::LossPoint> to_loss_points(const TrainingLog& log) {
  std::vector<fit::LossPoint> points;
  points.reserve(log.rows.size());
  for (const LogRow& r : log.rows) {
    fit::LossPoint p;
    p.run_id = r.run_id;
    p.params = r.params_nonembed;
    p.tokens = r.tokens_seen;
    p.loss = r.loss;
    p.flops = r.flops.value_or(fit::training_flops(r.params_nonembed, r.tokens_seen));
    points.push_back(std::move(p));
  }
  return points;
}

TrainingLog log_from_runs(const std::vector<fit::LossPoint>& runs, const std::string& arch) {
  TrainingLog log;
  std::map<std::string, std::int64_t> steps;
  for (const fit::LossPoint& p : runs) {
    LogRow row;
    row.run_id = p.run_id;
    row.arch = arch;
    row.params_nonembed = p.params;
    row.step = ++steps[p.run_id];
    row.tokens_seen = p.tokens;
    row.loss = p.loss;
    row.flops = p.flops;
    log.rows.push_back(std::move(row));
  }
  return log;
}

}  // namespace scaling_lab::cli
