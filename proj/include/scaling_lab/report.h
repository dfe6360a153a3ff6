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


#ifndef SCALING_LAB_REPORT_H_
#define SCALING_LAB_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scaling_lab/law_fit.h"

namespace scaling_lab::cli {

inline constexpr char kToolVersion[] = "0.1.0";

struct ReportMetadata {
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> input_digests;  // name -> sha256 hex
  nlohmann::json config = nlohmann::json::object();

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct NamedFit {
  std::string name;
  fit::PowerLawFit fit;

  friend bool operator==(const NamedFit&, const NamedFit&) = default;
};

struct NiahReport {
  std::string mode_label;
  std::map<std::string, double> values;
  std::map<std::string, double> parameters;
  std::string units;

  friend bool operator==(const NiahReport&, const NiahReport&) = default;
};

struct Report {
  ReportMetadata metadata;
  std::vector<NamedFit> fits;
  std::vector<fit::EnvelopePoint> envelope;
  std::optional<NiahReport> niah;
  bool table2_overlay = false;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& report);
// Throws ParseError naming the offending key.
Report report_from_json(const nlohmann::json& doc);

// Key-sorted, two-space indented, trailing newline.
std::string serialize_report(const Report& report);
Report parse_report(const std::string& text);

std::string sha256_hex(const std::string& bytes);
// Throws ParseError when the file cannot be read.
std::string file_sha256(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace scaling_lab::cli

#endif  // SCALING_LAB_REPORT_H_
