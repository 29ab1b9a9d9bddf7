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

#include "contracts/baselines.hpp"
#include "contracts/market.hpp"
#include "contracts/solvers.hpp"
#include "test_support.hpp"

using namespace contracts;
using namespace testing_support;

namespace {

MarketInstance nested(double r1, double r2) {
  return make_instance({make_type(0.4, 2, r1), make_type(0.8, 5, r2)});
}

}  // namespace

TEST_CASE("grid bounds") {
  const MarketInstance inst = nested(0.6, 0.4);
  const GridSpec g = resolve_grid(inst, GridSpec{});
  CHECK(*g.x_max == 5.0);
  CHECK(*g.p_max == 0.8);
  GridSpec odd;
  odd.dx = 0.3;
  CHECK(*resolve_grid(inst, odd).x_max == doctest::Approx(5.1));
  GridSpec low;
  low.x_max = 4.0;
  CHECK_THROWS_AS(resolve_grid(inst, low), ValidationError);
  GridSpec bad;
  bad.dp = 0.0;
  CHECK_THROWS_AS(resolve_grid(inst, bad), ValidationError);
}

TEST_CASE("grid search examples") {
  const MarketInstance one = make_instance({BuyerType{5, 3, 0.8, 1}});
  const Solution a = grid_opt(one, 1, GridSpec{});
  REQUIRE(a.menu.size() == 1);
  CHECK(a.menu.contracts[0].x == 2.5);
  CHECK(a.menu.contracts[0].p == doctest::Approx(0.8));
  CHECK(a.expected_profit == doctest::Approx(2.0));
  CHECK(a.method == "opt1");

  const MarketInstance two = nested(0.6, 0.4);
  const Solution b = grid_opt(two, 2, GridSpec{});
  const double delta = 0.5 * 1 + 5.0 * 0.1;
  CHECK(b.expected_profit <= 1.76 + 1e-9);
  CHECK(b.expected_profit >= 1.76 - delta);
  CHECK(b.method == "opt2");
  CHECK(b.grid.has_value());

  MarketInstance lossy = one;
  lossy.c = 0.9;
  CHECK_THROWS_AS(grid_opt(lossy, 1, GridSpec{}), ValidationError);
  CHECK_THROWS_AS(grid_opt(two, 0, GridSpec{}), ValidationError);
}

TEST_CASE("grid budget and large menus") {
  const MarketInstance two = nested(0.6, 0.4);
  GridSpec tight;
  tight.budget = 100;
  CHECK_THROWS_AS(grid_opt(two, 2, tight), ValidationError);
  CHECK_THROWS_AS(grid_opt(two, 3, GridSpec{}), ValidationError);
  GridSpec big;
  big.dx = 1.0;
  big.dp = 0.2;
  big.allow_large_m = true;
  const Solution s3 = grid_opt(two, 3, big);
  CHECK(s3.expected_profit >= grid_opt(two, 2, big).expected_profit - 1e-12);
}

TEST_CASE("reduced pair search equals full pair enumeration") {
  std::mt19937_64 g(41);
  GridSpec grid;
  grid.dx = 1.0;
  grid.dp = 0.1;
  for (int n = 0; n < 40; ++n) {
    const std::size_t K = 1 + n % 4;
    MarketInstance inst = gen_instance(K, g(), n % 3 == 0 ? 0.05 : 0.0, false);
    const Solution fast = grid_opt(inst, 2, grid);
    const Solution slow = grid_opt_exhaustive(inst, 2, grid);
    CHECK(fast.expected_profit == slow.expected_profit);
    const Solution f1 = grid_opt(inst, 1, grid);
    const Solution s1 = grid_opt_exhaustive(inst, 1, grid);
    CHECK(f1.expected_profit == s1.expected_profit);
    CHECK(fast.expected_profit >= f1.expected_profit);
  }
}

TEST_CASE("grid never beats exact solvers") {
  std::mt19937_64 g(43);
  const GridSpec grid;
  for (int n = 0; n < 60; ++n) {
    const MarketInstance inst = gen_instance(1 + n % 4, g(), 0.0, true);
    const Solution exact = solve_mc(inst);
    const Solution o1 = grid_opt(inst, 1, grid);
    const Solution o2 = grid_opt(inst, 2, grid);
    CHECK(o1.expected_profit <= exact.expected_profit + 1e-9);
    CHECK(o2.expected_profit <= exact.expected_profit + 1e-9);
    CHECK(o2.expected_profit >= o1.expected_profit);
    CHECK(menu_is_ic_ir(inst, o2.menu));
    if (inst.size() == 1) {
      const double delta = grid.dx * (*o1.grid->p_max - inst.c) + *o1.grid->x_max * grid.dp;
      CHECK(exact.expected_profit <= o1.expected_profit + delta);
    }
  }
}

TEST_CASE("best single knee") {
  const Solution a = max_single(nested(0.6, 0.4));
  CHECK(a.menu.contracts == std::vector<Contract>{{5, 0.8}});
  CHECK(a.expected_profit == doctest::Approx(1.6));
  CHECK(evaluate(nested(0.6, 0.4), {{{2, 0.4}}, {}}).expected_profit == doctest::Approx(0.8));

  const MarketInstance one = make_instance({BuyerType{5, 3, 0.8, 1}});
  CHECK(max_single(one).menu.contracts == solve_single(one.types[0], 0).menu.contracts);

  const MarketInstance same = make_instance({make_type(0.5, 3, 0.5), make_type(0.5, 3, 0.5)});
  CHECK(max_single(same).menu.contracts == std::vector<Contract>{{3, 0.5}});
}

TEST_CASE("cost oracle") {
  CHECK(oracle_cost({5, 3, 0.8}, {0, 0}) == doctest::Approx(2.0));
  CHECK(oracle_cost({5, 3, 0.8}, {2, 0.5}) == doctest::Approx(1.4).epsilon(1e-10));
  CHECK(oracle_cost({5, 3, 0.3}, {7, 0.2}) == doctest::Approx(2.114286).epsilon(1e-6));
}

TEST_CASE("enumeration oracles") {
  CHECK(oracle_vertex_enum(nested(0.6, 0.4)).expected_profit == doctest::Approx(1.76));
  const Solution b = oracle_vertex_enum(nested(0.3, 0.7));
  CHECK(b.expected_profit == doctest::Approx(2.8));
  CHECK(b.menu.contracts == std::vector<Contract>{{5, 0.8}});
  const MarketInstance one = make_instance({BuyerType{5, 3, 0.8, 1}});
  CHECK(oracle_vertex_enum(one).menu.contracts == std::vector<Contract>{{2.5, 0.8}});

  const MarketInstance cb = make_instance(
      {make_type(0.5, 2, 0.5), make_type(0.5, 4, 0.3), make_type(0.5, 6, 0.2)});
  const Solution s2 = oracle_subset_enum(cb, 2);
  CHECK(s2.expected_profit == doctest::Approx(1.5));
  CHECK(s2.menu.contracts == std::vector<Contract>{{2, 0.5}, {4, 0.5}});
  CHECK(oracle_subset_enum(cb, 3).menu.size() == 3);
  CHECK(oracle_subset_enum(cb, 1).expected_profit ==
        doctest::Approx(max_single(cb).expected_profit));
  CHECK_THROWS_AS(oracle_subset_enum(nested(0.5, 0.5), 1), ValidationError);
}
