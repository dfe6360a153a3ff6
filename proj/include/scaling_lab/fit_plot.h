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


#ifndef SCALING_LAB_FIT_PLOT_H_
#define SCALING_LAB_FIT_PLOT_H_

#include <optional>
#include <span>
#include <string>

#include "scaling_lab/arch_cost.h"
#include "scaling_lab/law_fit.h"

namespace scaling_lab::cli {

// Published laws take C in PFLOP-days by default.
inline constexpr double kPflopDay = 8.64e19;

struct PlotOverlay {
  arch::ArchKind kind;
  double flops_unit = kPflopDay;  // divides C before the published law is applied
};

// Log-log loss vs FLOPs: every log point, envelope markers, the fitted L(C)
// line and an optional published reference line whose labels quote the
// printed coefficients.
std::string render_fit_plot(std::span<const fit::LossPoint> points,
                            std::span<const fit::EnvelopePoint> envelope,
                            const fit::PowerLawFit& loss_fit,
                            const std::optional<PlotOverlay>& overlay);

// "3.7087·C^-0.0798" style label built from printed text.
std::string law_label(const fit::PublishedLaw& law);

}  // namespace scaling_lab::cli

#endif  // SCALING_LAB_FIT_PLOT_H_
