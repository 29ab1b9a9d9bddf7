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

#include <cstddef>

#include "contracts/types.hpp"

namespace contracts {

/// GridSpec with both bounds filled in for this instance. Throws
/// ValidationError for non-positive steps or bounds below the largest knee
/// width / largest b.
GridSpec resolve_grid(const MarketInstance& inst, const GridSpec& grid);

/// Best menu of at most M contracts drawn from the grid, p > c. M = 1 scans
/// every grid contract. M = 2 scans every first contract and, per x column,
/// only the second-contract prices where some type's choice can change (the
/// profit is monotone in price between those points), which visits the same
/// optimum as scanning all pairs. M > 2 needs grid.allow_large_m and uses
/// grid_opt_exhaustive. Throws ValidationError when the work exceeds
/// grid.budget menu evaluations.
Solution grid_opt(const MarketInstance& inst, int M, const GridSpec& grid);

/// Plain enumeration of every size-<=M multiset of grid contracts.
Solution grid_opt_exhaustive(const MarketInstance& inst, int M,
                             const GridSpec& grid);

/// Best single knee contract (the "K choose 1" rule).
Solution max_single(const MarketInstance& inst);

/// Buyer cost by bisection on the loss constraint, independent of the
/// closed form in buyer_cost().
double oracle_cost(const BuyerType& t, const Contract& k);

/// Brute force over nondecreasing quantity vectors whose entries are 0 or a
/// knee width of a type with no larger b, each priced by the cascade.
/// Requires the monotonicity condition and K <= max_types.
Solution oracle_vertex_enum(const MarketInstance& inst,
                            std::size_t max_types = 7);

/// Brute force over every subset of at most M knee contracts. Requires a
/// common b and K <= 12.
Solution oracle_subset_enum(const MarketInstance& inst, int M);

}  // namespace contracts
