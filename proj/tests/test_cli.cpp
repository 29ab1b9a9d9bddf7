// Copyright 2026 The contract-menus Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "contracts/json_io.hpp"

namespace fs = std::filesystem;
using contracts::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "contract-menus-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kNested = R"({"c": 0, "bandwidth_cap": null, "types": [
  {"q": 2, "epsilon": 1.2, "b": 0.4, "r": 0.6},
  {"q": 5, "epsilon": 1, "b": 0.8, "r": 0.4}]})";

}  // namespace

TEST_CASE("solve and eval close the loop") {
  const std::string in = write("nested.json", kNested);
  const Result r = call({"solve", "--in", in, "--method", "mc"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto menu = contracts::menu_from_json(j["menu"]);
  REQUIRE(menu.size() == 2);
  CHECK(menu.contracts[0].x == doctest::Approx(2));
  CHECK(menu.contracts[0].p == doctest::Approx(0.4));
  CHECK(menu.contracts[1].x == doctest::Approx(5));
  CHECK(menu.contracts[1].p == doctest::Approx(0.64));
  const double profit = j["report"]["expected_profit"].get<double>();
  CHECK(profit == doctest::Approx(1.76));
  CHECK(j["report"]["metadata"]["solver"] == "mc");

  const std::string menu_path = (scratch() / "menu.json").string();
  const std::string report_path = (scratch() / "report.json").string();
  REQUIRE(call({"solve", "--in", in, "--method", "mc", "--out", menu_path, "--report",
                report_path})
              .code == 0);
  const Result e = call({"eval", "--in", in, "--menu", menu_path});
  REQUIRE(e.code == 0);
  CHECK(nlohmann::json::parse(e.out)["expected_profit"].get<double>() == profit);
  CHECK(nlohmann::json::parse(slurp(report_path))["expected_profit"].get<double>() == profit);

  // byte-identical reruns
  CHECK(call({"solve", "--in", in}).out == call({"solve", "--in", in}).out);
  const Result a = call({"solve", "--in", in});
  CHECK(nlohmann::json::parse(a.out)["report"]["metadata"]["solver"] == "two-type");
}

TEST_CASE("shape mismatches exit with status 2") {
  const std::string in = write("mixed.json", kNested);
  const Result r = call({"solve", "--in", in, "--method", "common-b"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("types do not share a common b") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  CHECK(call({"solve", "--in", in, "--method", "single"}).code == 2);
  CHECK(call({"solve", "--in", in, "--method", "bogus"}).code == 2);
  CHECK(call({"solve", "--in", (scratch() / "missing.json").string()}).code == 2);
  CHECK(call({"solve"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const std::string bad = write("bad.json", R"({"types": [{"q":2,"epsilon":1,"b":0.5,"r":0.9}]})");
  const Result v = call({"solve", "--in", bad});
  CHECK(v.code == 2);
  CHECK(v.err.find("probabilities sum to 0.9") != std::string::npos);
  CHECK(call({"solve", "--in", in, "--c", "0.5"}).code == 2);
}

TEST_CASE("help goes to stdout") {
  const Result r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solve") != std::string::npos);
}

TEST_CASE("gen, sweep and curves") {
  const Result g1 = call({"gen", "--K", "3", "--seed", "11", "--mc-only"});
  REQUIRE(g1.code == 0);
  CHECK(g1.out == call({"gen", "--K", "3", "--seed", "11", "--mc-only"}).out);
  CHECK(contracts::decode_instance(g1.out).size() == 3);

  const Result s = call({"sweep", "--k-min", "1", "--k-max", "2", "--trials", "5", "--seed",
                         "9", "--methods", "alg,max"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("K,method,mean_profit,stderr,trials,seed,c,dx,dp\n", 0) == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 5);
  CHECK(call({"sweep", "--trials", "2", "--k-max", "2", "--methods", "alg,nope"}).code == 2);

  const std::string one = write("one.json", R"({"types": [{"q":5,"epsilon":3,"b":0.8,"r":1}]})");
  const Result c = call({"curves", "--in", one, "-n", "2"});
  REQUIRE(c.code == 0);
  CHECK(c.out == "x,p\n2.5,0.8\n5,0.4\n");
  const Result eq = call({"curves", "--in", one, "--mode", "equal-cost", "--x-ref", "2.5",
                          "--p-ref", "0.8", "-n", "2"});
  REQUIRE(eq.code == 0);
  CHECK(eq.out.find("\n5,0.4") != std::string::npos);
  CHECK(call({"curves", "--in", one, "--mode", "equal-cost"}).code == 2);
  CHECK(call({"curves", "--in", one, "--type", "3"}).code == 2);
}

TEST_CASE("knapsack") {
  const std::string in = write("knap.json", R"({"c": 0, "bandwidth_cap": 6, "types": [
    {"q": 5, "epsilon": 1, "b": 0.8, "r": 0.5}, {"q": 2, "epsilon": 1.2, "b": 0.4, "r": 0.5}]})");
  const Result r = call({"knapsack", "--in", in});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(4.4));
  CHECK(call({"knapsack", "--in", in, "--W", "-1"}).code == 2);
  const std::string nocap = write("nocap.json", kNested);
  CHECK(call({"knapsack", "--in", nocap}).code == 2);
  CHECK(call({"knapsack", "--in", nocap, "--W", "100"}).code == 0);
}
