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


#ifndef SCALING_LAB_TRAINING_LOG_H_
#define SCALING_LAB_TRAINING_LOG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scaling_lab/law_fit.h"

namespace scaling_lab::cli {

struct LogRow {
  std::string run_id;
  std::string arch;
  double params_nonembed = 0.0;
  std::int64_t step = 0;
  double tokens_seen = 0.0;
  double loss = 0.0;
  std::optional<double> flops;  // cumulative; 6 N D when absent
};

struct TrainingLog {
  std::vector<LogRow> rows;
};

// Header must name run_id, arch, params_nonembed, step, tokens_seen, loss in
// any order; a flops column is optional. Throws ParseError with the line
// number and field on malformed input or a violated per-run ordering.
TrainingLog read_training_log(std::istream& in);
TrainingLog load_training_log(const std::string& path);
void write_training_log(std::ostream& out, const TrainingLog& log);

std::vector<fit::LossPoint> to_loss_points(const TrainingLog& log);

// One row per (run, grid C), flops column filled.
TrainingLog log_from_runs(const std::vector<fit::LossPoint>& runs, const std::string& arch);

}  // namespace scaling_lab::cli

#endif  // SCALING_LAB_TRAINING_LOG_H_
