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
#include <optional>
#include <span>

namespace contracts {

// Absolute slack for cost and acceptance comparisons, in normalized price
// units. The closed forms are exact; this only absorbs float rounding.
inline constexpr double kTolerance = 1e-9;

/// A buyer's private type: how much it wants to send (q), how much expected
/// loss it tolerates (epsilon), how often the stochastic channel is usable
/// for it (b), and how likely a random buyer is of this type (r).
struct BuyerType {
  double q = 0.0;
  double epsilon = 0.0;
  double b = 0.5;
  double r = 1.0;

  /// Cost of meeting the loss constraint on the deterministic market alone.
  double reserve_price() const { return q - epsilon; }

  friend bool operator==(const BuyerType&, const BuyerType&) = default;
};

/// An offer of x units of stochastic bandwidth at unit price p. The
/// deterministic reference market sells at unit price 1.
struct Contract {
  double x = 0.0;
  double p = 0.0;

  double seller_utility(double c) const { return x * (p - c); }
  bool is_empty() const { return x == 0.0 && p == 0.0; }

  friend bool operator==(const Contract&, const Contract&) = default;
};

/// Corner of the acceptance region where the flat price boundary p = b meets
/// the hyperbolic branch.
struct KneePoint {
  double x_star = 0.0;
  double p_star = 0.0;

  Contract contract() const { return {x_star, p_star}; }
};

/// E[(q - y - xB)^+] for the binary channel B with P(B = 1) = b.
double expected_loss(const BuyerType& t, double x, double y);

/// Smallest deterministic purchase y >= 0 that keeps the expected loss
/// within epsilon when the buyer also holds x units of stochastic bandwidth.
double required_supplement(const BuyerType& t, double x);

/// Total outlay for contract k: the contract payment x*p plus the
/// deterministic supplement it still requires. buyer_cost(t, {0, 0}) is the
/// reserve price q - epsilon.
double buyer_cost(const BuyerType& t, const Contract& k);

/// True iff the contract costs no more than the reserve price.
bool accepts(const BuyerType& t, const Contract& k);

KneePoint knee(const BuyerType& t);

/// Price at which x units cost the buyer exactly as much as (x_ref, p_ref).
/// The result may lie outside the acceptance region; callers decide whether
/// to clamp. Throws std::invalid_argument if x <= 0.
double equivalent_price(const BuyerType& t, double x_ref, double p_ref,
                        double x);

inline double equivalent_price(const BuyerType& t, const Contract& ref,
                               double x) {
  return equivalent_price(t, ref.x, ref.p, x);
}

/// One alternative as seen by a buyer: what it costs the buyer, what it earns
/// the seller, and how much bandwidth it carries.
struct Offer {
  double cost = 0.0;
  double utility = 0.0;
  double x = 0.0;
};

// Index of the offer a cost-minimizing buyer takes. Offers within kTolerance
// of the minimum cost are treated as tied; ties go to the higher seller
// utility, then to the larger bandwidth, then to the lower index.
std::size_t choose_offer(std::span<const Offer> offers);

/// The contract a buyer of type t takes from the menu, or {0, 0} if buying
/// only deterministic service is (strictly) cheaper. c is the seller's unit
/// cost, used for seller-preferred tie breaking.
Contract select(const BuyerType& t, std::span<const Contract> menu,
                double c = 0.0);

// Same decision as select(), reported as a menu position; nullopt means the
// buyer walks away.
std::optional<std::size_t> select_index(const BuyerType& t,
                                        std::span<const Contract> menu,
                                        double c = 0.0);

}  // namespace contracts
