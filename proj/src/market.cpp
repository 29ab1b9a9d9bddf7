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

#include "contracts/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace contracts {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool same_contract(const Contract& a, const Contract& b) {
  return std::abs(a.x - b.x) <= kTolerance && std::abs(a.p - b.p) <= kTolerance;
}

}  // namespace

EvalReport evaluate(const MarketInstance& inst, const ContractMenu& menu) {
  EvalReport report;
  report.per_type.reserve(inst.types.size());
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const BuyerType& t = inst.types[i];
    TypeOutcome out;
    out.type = i;
    out.contract_index = select_index(t, menu.contracts, inst.c);
    if (out.contract_index) out.chosen = menu.contracts[*out.contract_index];
    out.cost = buyer_cost(t, out.chosen);
    out.seller_utility = out.contract_index ? out.chosen.seller_utility(inst.c) : 0.0;
    if (auto it = menu.designated.find(i); it != menu.designated.end()) {
      out.follows_designation =
          out.contract_index && *out.contract_index == it->second;
    }
    report.expected_profit += t.r * out.seller_utility;
    report.per_type.push_back(out);
  }
  return report;
}

std::vector<std::string> validate(const MarketInstance& inst) {
  std::vector<std::string> errs;
  if (inst.types.empty()) {
    errs.emplace_back("at least one type");
    return errs;
  }
  if (!std::isfinite(inst.c)) errs.emplace_back("c is not finite");
  if (inst.bandwidth_cap &&
      !(std::isfinite(*inst.bandwidth_cap) && *inst.bandwidth_cap >= 0.0)) {
    errs.emplace_back("bandwidth_cap must be a finite value >= 0");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const BuyerType& t = inst.types[i];
    const std::string tag = "type " + std::to_string(i) + ": ";
    if (!std::isfinite(t.q) || !std::isfinite(t.epsilon) ||
        !std::isfinite(t.b) || !std::isfinite(t.r)) {
      errs.push_back(tag + "non-finite field");
      continue;
    }
    if (t.epsilon < 0.0) errs.push_back(tag + "epsilon < 0");
    if (t.q < t.epsilon) errs.push_back(tag + "q < epsilon");
    if (!(t.b > 0.0 && t.b < 1.0)) errs.push_back(tag + "b outside (0, 1)");
    if (t.b <= inst.c) errs.push_back(tag + "b ≤ c");
    if (t.r < 0.0) errs.push_back(tag + "r < 0");
    total += t.r;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    errs.push_back("probabilities sum to " + shortest(total));
  }
  return errs;
}

void require_valid(const MarketInstance& inst) {
  auto errs = validate(inst);
  if (errs.empty()) return;
  std::string what = "invalid instance: " + errs.front();
  for (std::size_t i = 1; i < errs.size(); ++i) what += "; " + errs[i];
  throw ValidationError(what, std::move(errs));
}

ContractMenu normalize(const ContractMenu& menu) {
  std::vector<std::size_t> order(menu.contracts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Contract& ka = menu.contracts[a];
    const Contract& kb = menu.contracts[b];
    return ka.x != kb.x ? ka.x < kb.x : ka.p < kb.p;
  });

  ContractMenu out;
  std::vector<std::optional<std::size_t>> remap(menu.contracts.size());
  for (std::size_t idx : order) {
    const Contract& k = menu.contracts[idx];
    if (!(k.x > 0.0)) continue;
    auto hit = std::find_if(out.contracts.begin(), out.contracts.end(),
                            [&](const Contract& o) { return same_contract(o, k); });
    if (hit == out.contracts.end()) {
      out.contracts.push_back(k);
      remap[idx] = out.contracts.size() - 1;
    } else {
      remap[idx] = static_cast<std::size_t>(hit - out.contracts.begin());
    }
  }
  for (auto [type, idx] : menu.designated) {
    if (idx < remap.size() && remap[idx]) out.designated[type] = *remap[idx];
  }
  return out;
}

ContractMenu build_menu(std::span<const Contract> per_type) {
  ContractMenu raw;
  raw.contracts.assign(per_type.begin(), per_type.end());
  for (std::size_t i = 0; i < per_type.size(); ++i) raw.designated[i] = i;
  return normalize(raw);
}

std::vector<Allocation> knapsack_allocate(const MarketInstance& inst, double W) {
  if (!(W >= 0.0)) throw ValidationError("bandwidth cap must be >= 0");
  const std::size_t k = inst.types.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.types[a].b > inst.types[b].b;
  });

  std::vector<Allocation> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = {i, 0.0, inst.types[i].b};
  double left = W;
  for (std::size_t i : order) {
    if (inst.types[i].b <= inst.c) break;  // no margin left to earn
    const double take = std::min(knee(inst.types[i]).x_star, left);
    out[i].x = take;
    left -= take;
    if (left <= 0.0) break;
  }
  return out;
}

double allocation_value(const MarketInstance& inst,
                        std::span<const Allocation> allocation) {
  double v = 0.0;
  for (const Allocation& a : allocation) {
    v += (inst.types[a.type].b - inst.c) * a.x;
  }
  return v;
}

}  // namespace contracts
