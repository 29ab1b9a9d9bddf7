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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "contracts/types.hpp"

namespace contracts {

/// The knee contract, which is the seller's best offer to a known type.
/// Profit is the unweighted utility x*(b - c). A zero-width knee (q == eps)
/// yields an empty menu. Throws ValidationError if b <= c.
Solution solve_single(const BuyerType& t, double c);

/// Optimal menu of at most M contracts when every type shares the same b.
/// With M >= K every knee is offered; otherwise a dynamic program over the
/// types sorted by knee width picks the best M knees.
Solution solve_common_b(const MarketInstance& inst, int M);

/// Point where the acceptance boundaries of two types cross, for the
/// configuration in which neither type accepts the other's knee. Returns
/// nullopt when one region contains the other's knee. Symmetric in its
/// arguments.
std::optional<Contract> boundary_intersection(const BuyerType& t1,
                                              const BuyerType& t2);

/// Optimal menu of M (1 or 2) contracts for two types with private b.
Solution solve_two_type(const MarketInstance& inst, int M);

/// True when ordering the types by b (ties by knee width) leaves the knee
/// widths nondecreasing.
bool check_mc(const MarketInstance& inst);

/// Optimal menu for K types under the monotonicity condition: a backward
/// pass picks the quantity vector, then price_cascade prices it. Throws
/// ValidationError when check_mc fails.
Solution solve_mc(const MarketInstance& inst);

/// Same construction on any instance, after lowering each knee width to the
/// smallest width among types with larger b so the quantities stay
/// monotone. Equals solve_mc when the condition holds; otherwise a
/// heuristic whose profit is taken from evaluate().
Solution solve_alg(const MarketInstance& inst);

/// Prices a nondecreasing quantity vector so that each type weakly prefers
/// its own contract: p_i is the equal-cost price of the previous contract
/// for type i, starting from (0, 0). Types must be given in nondecreasing b
/// order with quantities xs[i] <= x_i*. Throws ValidationError otherwise.
ContractMenu price_cascade(const MarketInstance& inst,
                           std::span<const double> xs);

/// Picks the exact solver that applies (single, common-b, two-type, mc) and
/// falls back to grid search. M == 0 means "as many as useful".
Solution solve_auto(const MarketInstance& inst, int M, const GridSpec& grid);

namespace detail {

// Type indices ordered by (b, x*) ascending; stable.
std::vector<std::size_t> order_by_b(const MarketInstance& inst);

// Quantity vector from the backward pass over types already in b order.
// caps[i] is the largest quantity type i may receive.
std::vector<double> last_determined_quantities(std::span<const BuyerType> types,
                                               std::span<const double> caps,
                                               double c);

// Unchecked cascade over types already in b order; one contract per type,
// {0, 0} where xs[i] == 0.
std::vector<Contract> cascade_prices(std::span<const BuyerType> types,
                                     std::span<const double> xs);

}  // namespace detail

}  // namespace contracts
