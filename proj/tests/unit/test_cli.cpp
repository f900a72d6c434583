// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SOFTPLEX_CLI_PATH) + " " + args + " 2>cli_stderr.txt";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("sample writes a CSV with a provenance comment") {
  REQUIRE(cli("sample --n 10 --d 2 --density uniform --seed 5 --out cli_points.csv").code == 0);
  const std::string text = slurp("cli_points.csv");
  CHECK(text[0] == '#');
  CHECK(text.find("\nx0,x1\n") != std::string::npos);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 12);
  REQUIRE(cli("sample --n 10 --d 2 --density uniform --seed 5 --out cli_points2.csv").code == 0);
  CHECK(slurp("cli_points2.csv") == text);
}

TEST_CASE("build reports counts") {
  const Run r = cli("build --n 200 --d 2 --density uniform --seed 1 --r 0.15 --kmax 3");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["f"].size() == 4);
  CHECK(j["f"][0] == 200);
  long long chi = 0;
  for (std::size_t k = 0; k < 4; ++k) chi += (k % 2 ? -1 : 1) * j["f"][k].get<long long>();
  CHECK(j["chi"] == chi);
}

TEST_CASE("constants and regime") {
  Run r = cli("constants --kind mu --k 1 --d 1 --samples 1000");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(1.0));
  r = cli("regime --n 1e6 --d 1 --a 1.1 --k 1");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["sparse_ok"] == true);
  CHECK(cli("constants --kind phi --k 1 --l 1 --j 5 --d 1").code == 1);
}

TEST_CASE("experiment run and report") {
  spit("cli_cfg.json", R"({"n": 1000, "d": 1, "density": "uniform", "r": {"exponent": 1.1},
    "kmax": 2, "replications": 12, "master_seed": 4, "statistic": {"kind": "fk", "k": 1},
    "constants_samples": 10000})");
  REQUIRE(cli("experiment run --config cli_cfg.json --out cli_res1.csv --threads 1").code == 0);
  REQUIRE(cli("experiment run --config cli_cfg.json --out cli_res4.csv --threads 4").code == 0);
  CHECK(slurp("cli_res1.csv") == slurp("cli_res4.csv"));
  REQUIRE(cli("experiment run --config cli_cfg.json --out cli_res_s.csv --seed 9").code == 0);
  CHECK(slurp("cli_res_s.csv") != slurp("cli_res1.csv"));

  REQUIRE(cli("experiment report --in cli_res1.csv --out cli_report.json --qq cli_qq.csv").code == 0);
  const json rep = json::parse(slurp("cli_report.json"));
  CHECK(rep["report"]["sample_size"] == 12);
  CHECK(slurp("cli_qq.csv").rfind("theoretical,empirical\n", 0) == 0);
}

TEST_CASE("failures map to exit codes") {
  CHECK(cli("experiment run --config cli_missing.json --out x.csv").code == 1);
  spit("cli_bad.json", "{\n  \"n\": ,\n}");
  CHECK(cli("experiment run --config cli_bad.json --out x.csv").code == 1);
  CHECK(slurp("cli_stderr.txt").find("cli_bad.json:2:") != std::string::npos);
  spit("cli_dense.json", R"({"n": 100000, "d": 1, "density": "uniform", "r": {"value": 0.5},
    "kmax": 3, "replications": 2})");
  CHECK(cli("experiment run --config cli_dense.json --out x.csv").code == 2);
  CHECK(cli("no-such-command").code != 0);
}
