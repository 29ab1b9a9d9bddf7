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

#include "contracts/market.hpp"
#include "contracts/solvers.hpp"
#include "knapsack_oracle.hpp"
#include "test_support.hpp"

using namespace contracts;
using namespace testing_support;

namespace {

MarketInstance nested() {
  return make_instance({make_type(0.4, 2, 0.6), make_type(0.8, 5, 0.4)});
}

}  // namespace

TEST_CASE("evaluate") {
  const MarketInstance inst = nested();
  ContractMenu menu{{{2, 0.4}, {5, 0.64}}, {{0, 0}, {1, 1}}};
  const EvalReport rep = evaluate(inst, menu);
  CHECK(rep.expected_profit == doctest::Approx(1.76));
  REQUIRE(rep.per_type.size() == 2);
  CHECK(rep.per_type[0].chosen == Contract{2, 0.4});
  CHECK(rep.per_type[1].chosen == Contract{5, 0.64});
  CHECK(rep.per_type[0].follows_designation);
  CHECK(rep.per_type[1].follows_designation);
  CHECK(rep.per_type[1].seller_utility == doctest::Approx(3.2));

  const EvalReport empty = evaluate(inst, ContractMenu{});
  CHECK(empty.expected_profit == 0.0);
  CHECK_FALSE(empty.per_type[0].contract_index.has_value());
  CHECK(empty.per_type[0].cost == doctest::Approx(0.8));

  // each type finds the only contract too expensive
  const EvalReport none = evaluate(inst, ContractMenu{{{1, 0.9}}, {}});
  CHECK(none.expected_profit == 0.0);

  ContractMenu swapped{{{2, 0.4}, {5, 0.64}}, {{0, 1}}};
  CHECK_FALSE(evaluate(inst, swapped).per_type[0].follows_designation);
}

TEST_CASE("validate") {
  CHECK(validate(nested()).empty());
  MarketInstance cheap = make_instance({make_type(0.2, 2)}, 0.3);
  CHECK(validate(cheap) == std::vector<std::string>{"type 0: b ≤ c"});
  MarketInstance heavy = make_instance({make_type(0.4, 2, 0.5), make_type(0.8, 5, 0.4)});
  CHECK(validate(heavy) == std::vector<std::string>{"probabilities sum to 0.9"});
  CHECK(validate(MarketInstance{}) == std::vector<std::string>{"at least one type"});
  MarketInstance odd = make_instance({BuyerType{1, 2, 1.0, 1}});
  CHECK(validate(odd).size() == 2);
  CHECK_THROWS_AS(require_valid(heavy), ValidationError);
}

TEST_CASE("menu normalization") {
  const std::vector<Contract> per{{5, 0.64}, {0, 0}, {2, 0.4}, {2, 0.4 + 1e-12}};
  const ContractMenu m = build_menu(per);
  CHECK(m.contracts == std::vector<Contract>{{2, 0.4}, {5, 0.64}});
  CHECK(m.designated.at(0) == 1);
  CHECK(m.designated.count(1) == 0);
  CHECK(m.designated.at(2) == 0);
  CHECK(m.designated.at(3) == 0);
}

TEST_CASE("solver output evaluates to the reported profit") {
  std::mt19937_64 g(3);
  for (int n = 0; n < 50; ++n) {
    const MarketInstance inst = gen_instance(1 + n % 5, g(), 0.0, true);
    const Solution s = solve_mc(inst);
    CHECK(evaluate(inst, s.menu).expected_profit == doctest::Approx(s.expected_profit));
    for (const TypeOutcome& o : evaluate(inst, s.menu).per_type) {
      CHECK(o.follows_designation);
    }
  }
}

TEST_CASE("more contracts never cost a buyer more") {
  std::mt19937_64 g(9);
  for (int n = 0; n < 300; ++n) {
    const MarketInstance inst = gen_instance(3, g(), 0.0, false);
    ContractMenu menu;
    for (int j = 0; j < 3; ++j) menu.contracts.push_back({unif(g, 0.1, 8), unif(g, 0.01, 1)});
    const EvalReport before = evaluate(inst, menu);
    menu.contracts.push_back({unif(g, 0.1, 8), unif(g, 0.01, 1)});
    const EvalReport after = evaluate(inst, menu);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      CHECK(after.per_type[i].cost <= before.per_type[i].cost + kTolerance);
    }
  }
}

TEST_CASE("knapsack allocation") {
  const MarketInstance inst = make_instance({make_type(0.8, 5, 0.5), make_type(0.4, 2, 0.5)});
  const auto a = knapsack_allocate(inst, 6);
  REQUIRE(a.size() == 2);
  CHECK(a[0].x == doctest::Approx(5));
  CHECK(a[1].x == doctest::Approx(1));
  CHECK(allocation_value(inst, a) == doctest::Approx(4.4));

  const auto all = knapsack_allocate(inst, 100);
  CHECK(all[0].x == doctest::Approx(5));
  CHECK(all[1].x == doctest::Approx(2));
  const auto none = knapsack_allocate(inst, 0);
  CHECK(none[0].x == 0.0);
  CHECK(none[1].x == 0.0);
  CHECK_THROWS_AS(knapsack_allocate(inst, -1), ValidationError);

  std::mt19937_64 g(31);
  for (int n = 0; n < 100; ++n) {
    const MarketInstance r = gen_instance(1 + n % 4, g(), 0.0, false);
    double total = 0;
    for (const auto& t : r.types) total += knee(t).x_star;
    const double W = unif(g, 0, 1.2 * total);
    const auto alloc = knapsack_allocate(r, W);
    double used = 0;
    for (const auto& x : alloc) used += x.x;
    CHECK(used <= W + 1e-12);
    CHECK(std::abs(allocation_value(r, alloc) - lp_oracle_value(r, W)) <= 1e-9);
  }
}
