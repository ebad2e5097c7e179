// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

#include "bordertn/io.hpp"

#ifndef BORDERTN_CLI_PATH
#error "BORDERTN_CLI_PATH must point at the bordertn binary"
#endif

using nlohmann::json;

namespace {

int run(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(BORDERTN_CLI_PATH) + " " + args;
  if (!out_file.empty()) cmd += " --out " + out_file;
  cmd += " > /dev/null 2> /dev/null";
  return std::system(cmd.c_str());
}

json run_json(const std::string& args) {
  const std::string path = "/tmp/bordertn_cli_out.json";
  REQUIRE(run(args, path) == 0);
  return json::parse(bordertn::io::load_file(path));
}

}  // namespace

TEST_CASE("zoo --list names every built-in construction") {
  json j = run_json("zoo --list");
  REQUIRE(j.contains("constructions"));
  CHECK(j["constructions"].size() == 6);
}

TEST_CASE("verify emits the lambda degeneration certificate") {
  json j = run_json("verify --family lambda_degeneration_222");
  CHECK(j["d"] == 2);
  CHECK(j["e"] == 2);
  CHECK(j["leading"] == "lambda");
  CHECK(std::abs(j["proportionality"][0].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("cost --square reproduces the worked example") {
  json j = run_json("cost --square --chi 4 --D1 2 --D2 2 --d 2 --Cmm 1 --Csvd 1");
  CHECK(j["cost"].get<double>() == doctest::Approx(6144.0));
}

TEST_CASE("build reports vertex dims of the kagome patch") {
  json j = run_json("build --structure kagome:2,2");
  CHECK(j["bond_dimension"].get<double>() == doctest::Approx(3.0));
  CHECK(j["vertex_dims"]["r0.c0.br"] == 9);
  CHECK(j["vertex_dims"]["r0.c0.bl"] == 3);
}

TEST_CASE("expect on the RVB patch with identity matches contract --exact") {
  json ev = run_json("expect --family lambda_degeneration_222 --structure kagome:1,2");
  json ct = run_json("contract --generate rvb-kagome --dims 1 2 --exact");
  const double a = ev["value"][0].get<double>();
  const double b = ct["value"][0].get<double>();
  CHECK(std::abs(a - b) / std::abs(b) <= 1e-8);
  CHECK(ev["plan"]["points"].size() == 9);
}

TEST_CASE("reconstruct report carries plan and holdout") {
  json j = run_json("reconstruct --family w_border_mps --L 4 --structure face:w_border_mps");
  CHECK(j["samples"] == 4);
  CHECK(j["holdout_residual"].get<double>() <= 1e-8);
  CHECK(j["norm"].get<double>() == doctest::Approx(2.0));  // ||W(4)|| = 2
}

TEST_CASE("contract reports the documented fields and passes the dense check") {
  json j = run_json("contract --generate random-square --dims 3 3 2 2 2 --seed 5 --chi 8 "
                    "--dense-check");
  for (const char* key : {"value", "discarded_weight", "multiply_count", "model_cost", "chi",
                          "schedule", "dense_value", "dense_relative_error"})
    CHECK(j.contains(key));
  CHECK(j["schedule"] == "square");
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const std::string a = "/tmp/bordertn_det_a.json", b = "/tmp/bordertn_det_b.json";
  REQUIRE(run("contract --generate random-kagome --dims 2 2 2 2 2 2 2 2 2 --seed 9 --chi 6",
              a) == 0);
  REQUIRE(run("contract --generate random-kagome --dims 2 2 2 2 2 2 2 2 2 --seed 9 --chi 6",
              b) == 0);
  CHECK(bordertn::io::load_file(a) == bordertn::io::load_file(b));

  const std::string c = "/tmp/bordertn_det_c.json", d = "/tmp/bordertn_det_d.json";
  REQUIRE(run("expect --family lambda_degeneration_222 --structure kagome:1,2 --mode real",
              c) == 0);
  REQUIRE(run("expect --family lambda_degeneration_222 --structure kagome:1,2 --mode real",
              d) == 0);
  CHECK(bordertn::io::load_file(c) == bordertn::io::load_file(d));
}

TEST_CASE("malformed input exits nonzero with an error report") {
  CHECK(run("contract --network /nonexistent/net.json --chi 4") != 0);
  CHECK(run("verify --family not_a_family") != 0);
  CHECK(run("expect --family lambda_degeneration_222 --structure kagome:1,2 --mode bogus") != 0);
}

TEST_CASE("demo-rvb end to end") {
  json j = run_json("demo-rvb --rows 1 --cols 2");
  CHECK(j["faces"] == 2);
  CHECK(j["samples_state"] == 5);
  CHECK(j["samples_expectation"] == 9);
  CHECK(j["reconstruction_relative_error"].get<double>() <= 1e-8);
  CHECK(j["norm_cross_check_relative_error"].get<double>() <= 1e-8);
}

TEST_CASE("demo-w end to end") {
  json j = run_json("demo-w --L 5");
  CHECK(j["certificate"]["d"] == 1);
  CHECK(j["certificate"]["e"] == 4);
  CHECK(j["trace_m0_pow_L_exactly_zero"] == true);
  CHECK(j["reconstruction_relative_error"].get<double>() <= 1e-10);
}
