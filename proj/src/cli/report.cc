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


#include "scaling_lab/report.h"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "scaling_lab/errors.h"

namespace scaling_lab::cli {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError("report: '" + where + "' is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("report: missing key '" + where + "." + key + "'");
  return *it;
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("report: key '" + where + "." + key + "' has the wrong type");
  }
}

json fit_json(const fit::PowerLawFit& f) {
  return json{{"alpha", f.alpha}, {"beta", f.beta}, {"n_points", f.n_points},
              {"r_squared", f.r_squared}};
}

fit::PowerLawFit fit_from(const json& j, const std::string& where) {
  fit::PowerLawFit f;
  f.alpha = get<double>(j, "alpha", where);
  f.beta = get<double>(j, "beta", where);
  f.n_points = get<std::size_t>(j, "n_points", where);
  f.r_squared = get<double>(j, "r_squared", where);
  return f;
}

}  // namespace

json to_json(const Report& report) {
  json doc;
  doc["metadata"] = json{{"config", report.metadata.config},
                         {"input_digests", report.metadata.input_digests},
                         {"tool_version", report.metadata.tool_version}};
  json fits = json::array();
  for (const NamedFit& f : report.fits) {
    json entry = fit_json(f.fit);
    entry["name"] = f.name;
    fits.push_back(std::move(entry));
  }
  doc["fits"] = std::move(fits);
  json env = json::array();
  for (const fit::EnvelopePoint& p : report.envelope) {
    env.push_back(json{{"d_at_min", p.d_at_min}, {"flops", p.flops}, {"loss", p.loss},
                       {"n_at_min", p.n_at_min}});
  }
  doc["envelope"] = std::move(env);
  if (report.niah) {
    doc["niah"] = json{{"mode_label", report.niah->mode_label},
                       {"parameters", report.niah->parameters},
                       {"units", report.niah->units},
                       {"values", report.niah->values}};
  } else {
    doc["niah"] = nullptr;
  }
  doc["table2_overlay"] = report.table2_overlay;
  return doc;
}

Report report_from_json(const json& doc) {
  Report r;
  const json& meta = field(doc, "metadata", "");
  r.metadata.tool_version = get<std::string>(meta, "tool_version", "metadata");
  r.metadata.input_digests =
      get<std::map<std::string, std::string>>(meta, "input_digests", "metadata");
  r.metadata.config = field(meta, "config", "metadata");
  const json& fits = field(doc, "fits", "");
  if (!fits.is_array()) throw ParseError("report: key 'fits' is not an array");
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const std::string where = "fits[" + std::to_string(i) + "]";
    r.fits.push_back({get<std::string>(fits[i], "name", where), fit_from(fits[i], where)});
  }
  const json& env = field(doc, "envelope", "");
  if (!env.is_array()) throw ParseError("report: key 'envelope' is not an array");
  for (std::size_t i = 0; i < env.size(); ++i) {
    const std::string where = "envelope[" + std::to_string(i) + "]";
    fit::EnvelopePoint p;
    p.flops = get<double>(env[i], "flops", where);
    p.loss = get<double>(env[i], "loss", where);
    p.n_at_min = get<double>(env[i], "n_at_min", where);
    p.d_at_min = get<double>(env[i], "d_at_min", where);
    r.envelope.push_back(p);
  }
  const json& niah = field(doc, "niah", "");
  if (!niah.is_null()) {
    NiahReport n;
    n.mode_label = get<std::string>(niah, "mode_label", "niah");
    n.parameters = get<std::map<std::string, double>>(niah, "parameters", "niah");
    n.values = get<std::map<std::string, double>>(niah, "values", "niah");
    n.units = get<std::string>(niah, "units", "niah");
    r.niah = std::move(n);
  }
  r.table2_overlay = get<bool>(doc, "table2_overlay", "");
  return r;
}

std::string serialize_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

Report parse_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report_from_json(doc);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string file_sha256(const std::string& path) { return sha256_hex(read_file(path)); }

}  // namespace scaling_lab::cli
