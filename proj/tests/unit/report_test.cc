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


#include <doctest.h>

#include <sstream>

#include "scaling_lab/errors.h"
#include "scaling_lab/fit_plot.h"
#include "scaling_lab/report.h"
#include "scaling_lab/svg.h"
#include "scaling_lab/training_log.h"

namespace cli = scaling_lab::cli;
namespace fit = scaling_lab::fit;

namespace {

cli::Report sample_report() {
  cli::Report r;
  r.metadata.input_digests["log"] = cli::sha256_hex("x");
  r.metadata.config = {{"command", "fit"}, {"bins_per_decade", 40}};
  r.fits = {{"L(C)", {-0.0798, 3.7087, 0.99, 12}}, {"N_opt(C)", {0.7, 1.82e8, 0.9, 12}}};
  r.envelope = {{1e18, 3.1, 1e8, 1.6e9}, {1.3e18, 3.0000000000000004, 1.2e8, 1.8e9}};
  r.niah = cli::NiahReport{"easy", {{"weighted_avg", 55.555555555555557}}, {{"alpha_d", 1.25}}, "percent"};
  r.table2_overlay = true;
  return r;
}

}  // namespace

TEST_CASE("report serialization is a round-trip fixed point") {
  const cli::Report r = sample_report();
  const std::string text = cli::serialize_report(r);
  const cli::Report back = cli::parse_report(text);
  CHECK(back == r);
  CHECK(cli::serialize_report(back) == text);
  cli::Report empty;
  CHECK(cli::parse_report(cli::serialize_report(empty)) == empty);
}

TEST_CASE("report keys are sorted") {
  const std::string text = cli::serialize_report(sample_report());
  CHECK(text.find("\"envelope\"") < text.find("\"fits\""));
  CHECK(text.find("\"fits\"") < text.find("\"metadata\""));
  CHECK(text.find("\"metadata\"") < text.find("\"niah\""));
  CHECK(text.find("\"niah\"") < text.find("\"table2_overlay\""));
}

TEST_CASE("report parse errors name the key") {
  CHECK_THROWS_WITH_AS(cli::parse_report("{\"fits\": []}"), doctest::Contains("metadata"),
                       scaling_lab::ParseError);
  CHECK_THROWS_AS(cli::parse_report("{not json"), scaling_lab::ParseError);
  std::string text = cli::serialize_report(sample_report());
  text.replace(text.find("\"table2_overlay\": true"), 22, "\"table2_overlay\": 3");
  CHECK_THROWS_WITH_AS(cli::parse_report(text), doctest::Contains("table2_overlay"),
                       scaling_lab::ParseError);
}

TEST_CASE("sha256 known vectors") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("training log parsing") {
  std::istringstream in(
      "run_id,arch,params_nonembed,step,tokens_seen,loss\n"
      "r1,llama,1e8,1,1e9,3.0\n"
      "r1,llama,1e8,2,2e9,2.9\n"
      "r2,tnl,2e8,1,1e9,2.95\n");
  const auto log = cli::read_training_log(in);
  REQUIRE(log.rows.size() == 3);
  const auto pts = cli::to_loss_points(log);
  CHECK(pts[1].flops == 6.0 * 1e8 * 2e9);
  CHECK(pts[2].run_id == "r2");
}

TEST_CASE("training log with flops column and reordered header") {
  std::istringstream in("loss,flops,run_id,arch,step,tokens_seen,params_nonembed\n2.5,7e18,a,x,3,1e9,1e8\n");
  const auto pts = cli::to_loss_points(cli::read_training_log(in));
  CHECK(pts[0].flops == 7e18);
  CHECK(pts[0].loss == 2.5);
}

TEST_CASE("training log errors carry line and field") {
  auto fails = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    CHECK_THROWS_WITH_AS(cli::read_training_log(in), doctest::Contains(needle.c_str()), scaling_lab::ParseError);
  };
  const std::string head = "run_id,arch,params_nonembed,step,tokens_seen,loss\n";
  fails("run_id,arch,step,tokens_seen,loss\n", "params_nonembed");
  fails(head + "r,a,1e8,1,1e9,-1\n", "loss");
  fails(head + "r,a,1e8,1,1e9,abc\n", "line 2");
  fails(head + "r,a,1e8,2,1e9,3\nr,a,1e8,2,2e9,2\n", "step");
  fails(head + "r,a,1e8,1,2e9,3\nr,a,1e8,2,1e9,2\n", "tokens_seen");
  fails(head + "r,a,1e8,1\n", "line 2");
  fails(head, "no data rows");
}

TEST_CASE("training log write and read back") {
  cli::TrainingLog log;
  log.rows.push_back({"a", "llama", 1e8, 1, 1e9, 3.25, 6e17});
  log.rows.push_back({"a", "llama", 1e8, 2, 2e9, 3.0, 1.2e18});
  std::stringstream ss;
  cli::write_training_log(ss, log);
  const auto back = cli::read_training_log(ss);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[1].flops.value() == 1.2e18);
  CHECK(back.rows[0].loss == 3.25);
}

TEST_CASE("svg escaping and number format") {
  CHECK(scaling_lab::svg::escape("a<b & \"c\"") == "a&lt;b &amp; &quot;c&quot;");
  CHECK(scaling_lab::svg::fmt(1.0) == "1.000");
  CHECK(scaling_lab::svg::fmt(-0.0001) == "0.000");
}

TEST_CASE("fit plot quotes the published coefficients") {
  std::vector<fit::LossPoint> pts{{"a", 1e20, 1e9, 1e8, 3.0}, {"a", 1e21, 1e10, 1e8, 2.8}};
  std::vector<fit::EnvelopePoint> env{{1e20, 3.0, 1e8, 1e9}, {1e21, 2.8, 1e8, 1e10}};
  const fit::PowerLawFit f = fit::fit_power_law(std::vector<fit::XY>{{1e20, 3.0}, {1e21, 2.8}});
  const std::string svg =
      cli::render_fit_plot(pts, env, f, cli::PlotOverlay{scaling_lab::arch::ArchKind::kCosFormer2});
  CHECK(svg.find("3.5877·C^-0.0756") != std::string::npos);
  CHECK(svg.find("2.65e8·C^0.6516") != std::string::npos);
  CHECK(svg.find("4.23e10·C^0.4529") != std::string::npos);
  CHECK(svg == cli::render_fit_plot(pts, env, f, cli::PlotOverlay{scaling_lab::arch::ArchKind::kCosFormer2}));
  const std::string plain = cli::render_fit_plot(pts, env, f, std::nullopt);
  CHECK(plain.find("published") == std::string::npos);
  CHECK(plain.find("class=\"envelope\"") != std::string::npos);
}
