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


#include <string>

#include "scaling_lab/law_fit.h"

namespace scaling_lab::fit {
namespace {

using arch::ArchKind;

PublishedLaw law(double beta, double alpha, std::string beta_text,
                 std::string alpha_text) {
  PublishedLaw p;
  p.fit.beta = beta;
  p.fit.alpha = alpha;
  p.fit.r_squared = 0.0;  // not published
  p.fit.n_points = 0;
  p.beta_text = std::move(beta_text);
  p.alpha_text = std::move(alpha_text);
  return p;
}

}  // namespace

const std::map<std::pair<ArchKind, LawQuantity>, PublishedLaw>& table2_laws() {
  static const auto* laws = new std::map<std::pair<ArchKind, LawQuantity>, PublishedLaw>{
      {{ArchKind::kSoftmaxAttention, LawQuantity::kLoss}, law(3.7087, -0.0798, "3.7087", "-0.0798")},
      {{ArchKind::kSoftmaxAttention, LawQuantity::kNOpt}, law(1.82e8, 0.7118, "1.82e8", "0.7118")},
      {{ArchKind::kSoftmaxAttention, LawQuantity::kDOpt}, law(2.56e10, 0.5102, "2.56e10", "0.5102")},
      {{ArchKind::kTnl, LawQuantity::kLoss}, law(3.5391, -0.0768, "3.5391", "-0.0768")},
      {{ArchKind::kTnl, LawQuantity::kNOpt}, law(2.74e8, 0.6470, "2.74e8", "0.6470")},
      {{ArchKind::kTnl, LawQuantity::kDOpt}, law(4.43e10, 0.4684, "4.43e10", "0.4684")},
      {{ArchKind::kHgrn2, LawQuantity::kLoss}, law(3.4788, -0.0753, "3.4788", "-0.0753")},
      {{ArchKind::kHgrn2, LawQuantity::kNOpt}, law(2.66e8, 0.6427, "2.66e8", "0.6427")},
      {{ArchKind::kHgrn2, LawQuantity::kDOpt}, law(4.80e10, 0.4500, "4.80e10", "0.4500")},
      {{ArchKind::kCosFormer2, LawQuantity::kLoss}, law(3.5877, -0.0756, "3.5877", "-0.0756")},
      {{ArchKind::kCosFormer2, LawQuantity::kNOpt}, law(2.65e8, 0.6516, "2.65e8", "0.6516")},
      {{ArchKind::kCosFormer2, LawQuantity::kDOpt}, law(4.23e10, 0.4529, "4.23e10", "0.4529")},
  };
  return *laws;
}

const PublishedLaw& table2_law(ArchKind kind, LawQuantity quantity) {
  return table2_laws().at({kind, quantity});
}

std::string_view quantity_name(LawQuantity quantity) {
  switch (quantity) {
    case LawQuantity::kLoss:
      return "L";
    case LawQuantity::kNOpt:
      return "N_opt";
    case LawQuantity::kDOpt:
      return "D_opt";
  }
  return "?";
}

}  // namespace scaling_lab::fit
