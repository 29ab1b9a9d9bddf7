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

#include <span>
#include <string>
#include <vector>

#include "contracts/types.hpp"

namespace contracts {

/// Lets every type pick from the menu and sums the r-weighted seller
/// utilities. Choices are recomputed from costs; the designated map only
/// feeds TypeOutcome::follows_designation.
EvalReport evaluate(const MarketInstance& inst, const ContractMenu& menu);

/// Human-readable violations of the instance invariants; empty when valid.
std::vector<std::string> validate(const MarketInstance& inst);

/// Throws ValidationError carrying validate()'s list when it is non-empty.
void require_valid(const MarketInstance& inst);

/// Builds a menu from one intended contract per type (x = 0 means the type
/// is not served). Zero-bandwidth entries are dropped, contracts equal
/// within kTolerance are merged, and the result is sorted by (x, p).
ContractMenu build_menu(std::span<const Contract> per_type);

/// Applies build_menu's dropping and merging rules to an existing menu,
/// carrying designations along.
ContractMenu normalize(const ContractMenu& menu);

struct Allocation {
  std::size_t type = 0;
  double x = 0.0;
  double price = 0.0;
};

/// Full-information allocation under a bandwidth cap W: each type is sold
/// up to its knee quantity at its knee price b, filling the highest-margin
/// types first. One entry per type, in type order.
std::vector<Allocation> knapsack_allocate(const MarketInstance& inst,
                                          double W);

double allocation_value(const MarketInstance& inst,
                        std::span<const Allocation> allocation);

}  // namespace contracts
