// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "softplex/error.hpp"
#include "softplex/json_io.hpp"

using namespace softplex;

namespace {

const char* kConfig = R"({
  "model": "rips", "process": "binomial", "n": 1000, "d": 2,
  "density": "uniform", "r": {"exponent": 1.2}, "rho": {"exponents": [0.1, 0.2]},
  "kmax": 2, "replications": 5, "master_seed": 7, "statistic": {"kind": "fk", "k": 1}
})";

}  // namespace

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json("{\n  \"n\": ,\n}", "bad.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("bad.json:2:", 0) == 0);
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config round trip is canonical") {
  const auto c = config_from_json(parse_json(kConfig));
  CHECK(c.n == 1000.0);
  CHECK(c.dimension() == 2);
  CHECK(c.r.kind == RadiusRule::Kind::exponent);
  REQUIRE(c.rho);
  CHECK(c.rho->kind == RhoRule::Kind::exponents);
  CHECK(c.k_max == 2);
  CHECK(c.replications == 5);
  CHECK(c.master_seed == 7);
  const Json canon = config_to_json(c);
  CHECK(canon["n"].is_number_unsigned());
  CHECK(canon["statistic"]["k"] == 1);
  const Json again = config_to_json(config_from_json(canon));
  CHECK(again.dump() == canon.dump());
}

TEST_CASE("config rejects bad input") {
  auto j = parse_json(kConfig);
  j["colour"] = 1;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j.erase("d");
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j["r"] = {{"value", 0.1}, {"exponent", 1.0}};
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j["model"] = "alpha";
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j["statistic"] = {{"kind", "fk"}, {"k", 5}};
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j["replications"] = 1;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = parse_json(kConfig);
  j["kmax"] = -1;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
}

TEST_CASE("densities and regions serialize") {
  for (const char* text : {R"({"kind":"uniform-box","lo":[0,0],"hi":[2,1]})",
                           R"({"kind":"gaussian","mean":[0,1,2],"sigma":0.5})",
                           R"({"kind":"piecewise-constant","lo":[0],"hi":[2],"shape":[2],"weights":[1,3]})"}) {
    const Json j = parse_json(text);
    const Json out = density_to_json(density_from_json(j));
    CHECK(density_from_json(out).dimension() == density_from_json(j).dimension());
    CHECK(out["kind"] == j["kind"]);
  }
  CHECK_THROWS_AS(density_from_json(parse_json(R"({"kind":"cauchy"})")), ConfigError);
  CHECK_THROWS_AS(density_from_name("laplace", 2), ConfigError);
  const Region box = region_from_json(parse_json(R"({"kind":"box","lo":[0.2],"hi":[0.4]})"));
  CHECK(box.kind() == RegionKind::box);
  CHECK(region_to_json(box)["hi"][0] == 0.4);
  CHECK(region_from_json(Json("all")).kind() == RegionKind::all);
  CHECK(region_from_json(parse_json(R"({"kind":"box-complement","lo":[0],"hi":[1]})")).kind() ==
        RegionKind::box_complement);
}

TEST_CASE("overrides replace top-level keys") {
  const Json resolved = resolve_config(parse_json(kConfig), Json{{"n", 50}, {"master_seed", 3}});
  CHECK(resolved["n"] == 50);
  CHECK(resolved["master_seed"] == 3);
  CHECK(resolved["kmax"] == 2);
  CHECK_THROWS_AS(resolve_config(parse_json(kConfig), Json{{"bogus", 1}}), ConfigError);
}

TEST_CASE("results CSV round trip") {
  const auto c = config_from_json(parse_json(kConfig));
  std::vector<ReplicationResult> rows(2);
  rows[0] = {0, {10, 4, 1}, 7, 10, 0.0};
  rows[1] = {1, {12, 5, 0}, 7, 12, 0.0};
  std::ostringstream out;
  write_results_csv(out, c, rows);
  const std::string text = out.str();
  CHECK(text.find("rep,f0,f1,f2,chi,n_points,seconds\n0,10,4,1,7,10,0\n") != std::string::npos);
  std::istringstream in(text);
  const auto file = read_results_csv(in);
  CHECK(file.k_max == 2);
  CHECK(file.results == rows);
  REQUIRE(file.config);
  CHECK(file.config->dump() == config_to_json(c).dump());

  std::istringstream bad("rep,f0,f1,chi,n_points,seconds\n0,3,1,5,3,0\n");
  CHECK_THROWS_AS(read_results_csv(bad), InputError);
  std::istringstream short_row("rep,f0,f1,chi,n_points,seconds\n0,3,1\n");
  CHECK_THROWS_AS(read_results_csv(short_row), InputError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_results_csv(empty), InputError);
}

TEST_CASE("constant and regime requests") {
  const Json mu = estimate_constant_json(parse_json(R"({"kind":"mu","k":1,"d":1,"samples":20000,"seed":4})"));
  CHECK(mu["value"].get<double>() == doctest::Approx(1.0));
  CHECK(mu["params"]["kind"] == "mu");
  CHECK(mu["samples"] == 20000);
  CHECK_THROWS_AS(estimate_constant_json(parse_json(R"({"kind":"phi","k":1,"l":1,"j":3})")), ConfigError);
  CHECK_THROWS_AS(estimate_constant_json(parse_json(R"({"kind":"mu","k":1,"l":1})")), ConfigError);
  CHECK_THROWS_AS(estimate_constant_json(parse_json(R"({"kind":"eta","k":1})")), ConfigError);

  const Json reg = regime_check_json(parse_json(R"({"n":1e6,"d":1,"a":1.1,"k":1})"));
  CHECK(reg["sparse_ok"] == true);
  CHECK(reg["nrd"].get<double>() == doctest::Approx(std::pow(1e6, -0.1)));
  CHECK_THROWS_AS(regime_check_json(parse_json(R"({"n":1e5,"d":1,"a":1.1,"r":0.1,"k":1})")), ConfigError);
  CHECK_THROWS_AS(regime_check_json(parse_json(R"({"n":1e5,"d":1,"a":1.1,"k":2,"rho":[0.5]})")),
                  ConfigError);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-20) == "-1.5e-20");
}
