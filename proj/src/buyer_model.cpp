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

#include "contracts/buyer_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace contracts {

double expected_loss(const BuyerType& t, double x, double y) {
  return t.b * std::max(t.q - y - x, 0.0) + (1.0 - t.b) * std::max(t.q - y, 0.0);
}

KneePoint knee(const BuyerType& t) {
  // (q - eps)/b binds exactly when q(1 - b) <= eps.
  const double x_star =
      std::min((t.q - t.epsilon) / t.b, t.epsilon / (1.0 - t.b));
  return {x_star, t.b};
}

double required_supplement(const BuyerType& t, double x) {
  const double x_star = knee(t).x_star;
  return std::max(t.q - t.epsilon - t.b * std::min(x, x_star), 0.0);
}

double buyer_cost(const BuyerType& t, const Contract& k) {
  return required_supplement(t, k.x) + k.x * k.p;
}

bool accepts(const BuyerType& t, const Contract& k) {
  return buyer_cost(t, k) <= t.reserve_price() + kTolerance;
}

double equivalent_price(const BuyerType& t, double x_ref, double p_ref,
                        double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("equivalent_price: x must be positive");
  }
  const double x_star = knee(t).x_star;
  // Both contracts cost y(x) + x p with y(x) = q - eps - b min(x, x*).
  return (t.b * std::min(x, x_star) - t.b * std::min(x_ref, x_star) +
          x_ref * p_ref) /
         x;
}

std::size_t choose_offer(std::span<const Offer> offers) {
  if (offers.empty()) {
    throw std::invalid_argument("choose_offer: no offers");
  }
  double min_cost = offers[0].cost;
  for (const Offer& o : offers) min_cost = std::min(min_cost, o.cost);

  std::size_t best = offers.size();
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const Offer& o = offers[i];
    if (o.cost > min_cost + kTolerance) continue;
    if (best == offers.size()) {
      best = i;
      continue;
    }
    const Offer& cur = offers[best];
    if (o.utility > cur.utility + kTolerance ||
        (o.utility >= cur.utility - kTolerance && o.x > cur.x)) {
      best = i;
    }
  }
  return best;
}

std::optional<std::size_t> select_index(const BuyerType& t,
                                        std::span<const Contract> menu,
                                        double c) {
  std::vector<Offer> offers;
  offers.reserve(menu.size() + 1);
  offers.push_back({t.reserve_price(), 0.0, 0.0});
  for (const Contract& k : menu) {
    offers.push_back({buyer_cost(t, k), k.seller_utility(c), k.x});
  }
  const std::size_t pick = choose_offer(offers);
  if (pick == 0) return std::nullopt;
  return pick - 1;
}

Contract select(const BuyerType& t, std::span<const Contract> menu, double c) {
  const auto idx = select_index(t, menu, c);
  return idx ? menu[*idx] : Contract{};
}

}  // namespace contracts
