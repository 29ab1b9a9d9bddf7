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
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "contracts/buyer_model.hpp"

namespace contracts {

/// Raised when an instance, menu, grid or request breaks a documented
/// precondition. The CLI maps it to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : std::invalid_argument(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct MarketInstance {
  std::vector<BuyerType> types;
  double c = 0.0;
  std::optional<double> bandwidth_cap;

  std::size_t size() const { return types.size(); }

  friend bool operator==(const MarketInstance&,
                         const MarketInstance&) = default;
};

/// Contracts on offer plus, optionally, which contract each type is meant to
/// take (type index -> contract index).
struct ContractMenu {
  std::vector<Contract> contracts;
  std::map<std::size_t, std::size_t> designated;

  bool empty() const { return contracts.empty(); }
  std::size_t size() const { return contracts.size(); }

  friend bool operator==(const ContractMenu&, const ContractMenu&) = default;
};

/// Discretization for exhaustive menu search. Unset bounds are resolved per
/// instance: x_max to the largest knee rounded up to the x grid, p_max to
/// the largest b.
struct GridSpec {
  double dx = 0.5;
  double dp = 0.1;
  std::optional<double> x_max;
  std::optional<double> p_max;
  double budget = 5e7;
  bool allow_large_m = false;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ReportMetadata {
  std::string solver;
  std::optional<GridSpec> grid;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> notes;

  friend bool operator==(const ReportMetadata&,
                         const ReportMetadata&) = default;
};

struct TypeOutcome {
  std::size_t type = 0;
  Contract chosen;
  std::optional<std::size_t> contract_index;  // nullopt: walked away
  double cost = 0.0;
  double seller_utility = 0.0;
  bool follows_designation = true;

  friend bool operator==(const TypeOutcome&, const TypeOutcome&) = default;
};

struct EvalReport {
  std::vector<TypeOutcome> per_type;
  double expected_profit = 0.0;
  ReportMetadata metadata;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Output of every solver and baseline.
struct Solution {
  ContractMenu menu;
  double expected_profit = 0.0;
  std::string method;
  std::optional<GridSpec> grid;  // resolved grid, for grid searches only
};

}  // namespace contracts
