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

#include "contracts/harness.hpp"
#include "contracts/json_io.hpp"
#include "contracts/solvers.hpp"
#include "test_support.hpp"

using namespace contracts;

namespace {

DecodeErrorKind kind_of(std::string_view text) {
  try {
    decode_instance(text);
  } catch (const DecodeError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return DecodeErrorKind::kSyntax;
}

}  // namespace

TEST_CASE("instance round trip") {
  MarketInstance inst = gen_instance(7, 2024, 0.1, false);
  inst.bandwidth_cap = 12.25;
  CHECK(decode_instance(encode(inst)) == inst);
  inst.bandwidth_cap.reset();
  CHECK(decode_instance(encode(inst)) == inst);
  CHECK(encode(decode_instance(encode(inst))) == encode(inst));
}

TEST_CASE("instance decoding errors") {
  try {
    decode_instance(R"({"types": []})");
    FAIL("expected an error");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeErrorKind::kSchema);
    CHECK(std::string(e.what()).find("at least one type") != std::string::npos);
  }

  try {
    decode_instance(R"({"types": [{"q":2,"epsilon":1,"b":0.5,"r":0.5},
                                  {"q":2,"epsilon":1,"b":0.6,"r":0.4}]})");
    FAIL("expected an error");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeErrorKind::kValidation);
    CHECK(std::string(e.what()).find("probabilities sum to 0.9") != std::string::npos);
  }

  try {
    decode_instance(R"({"types": [{"q":2,"epsilon":1,"b":0.5,"r":1,"w":3}]})");
    FAIL("expected an error");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeErrorKind::kSchema);
    CHECK(e.path() == "/types/0/w");
  }

  CHECK(kind_of("{\"types\": [") == DecodeErrorKind::kSyntax);
  CHECK(kind_of(R"({"types": [{"q":"2","epsilon":1,"b":0.5,"r":1}]})") ==
        DecodeErrorKind::kSchema);
  CHECK(kind_of(R"({"types": [{"epsilon":1,"b":0.5,"r":1}]})") == DecodeErrorKind::kSchema);
  CHECK(kind_of(R"([1, 2])") == DecodeErrorKind::kSchema);
  CHECK(kind_of(R"({"types": [{"q":2,"epsilon":1,"b":1.5,"r":1}]})") ==
        DecodeErrorKind::kValidation);

  // c is optional
  const MarketInstance d = decode_instance(R"({"types": [{"q":2,"epsilon":1,"b":0.5,"r":1}]})");
  CHECK(d.c == 0.0);
  CHECK_FALSE(d.bandwidth_cap.has_value());
}

TEST_CASE("menu round trip") {
  ContractMenu menu{{{2, 0.4}, {5, 0.64}, {0.1 + 0.2, 1.0 / 3.0}}, {{0, 0}, {1, 1}, {12, 2}}};
  CHECK(decode_menu(encode(menu)) == menu);
  CHECK(decode_menu(R"({"contracts": []})").empty());
  CHECK_THROWS_AS(decode_menu(R"({"contracts": [{"x":1,"p":0.5}], "designated": {"a": 0}})"),
                  DecodeError);
  CHECK_THROWS_AS(decode_menu(R"({"contracts": [{"x":1,"p":0.5}], "designated": {"0": 1}})"),
                  DecodeError);
  CHECK_THROWS_AS(decode_menu(R"({"contracts": [{"x":-1,"p":0.5}]})"), DecodeError);
}

TEST_CASE("report round trip") {
  const MarketInstance inst = gen_instance(4, 8, 0.0, false);
  const Solution s = solve_auto(inst, 2, GridSpec{});
  EvalReport rep = evaluate(inst, s.menu);
  rep.metadata.solver = s.method;
  rep.metadata.grid = s.grid;
  rep.metadata.seed = 18446744073709551615ULL;
  rep.metadata.notes = {"a", "b"};
  CHECK(decode_report(encode(rep)) == rep);
  EvalReport bare = evaluate(inst, ContractMenu{});
  CHECK(decode_report(encode(bare)) == bare);
}

TEST_CASE("allocation json") {
  const MarketInstance inst =
      testing_support::make_instance({testing_support::make_type(0.8, 5, 0.5),
                                      testing_support::make_type(0.4, 2, 0.5)});
  const auto j = allocation_to_json(inst, 6, knapsack_allocate(inst, 6));
  CHECK(j["value"].get<double>() == doctest::Approx(4.4));
  CHECK(j["allocations"].size() == 2);
  CHECK(j["allocations"][1]["x"].get<double>() == doctest::Approx(1));
}
