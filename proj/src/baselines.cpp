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

#include "contracts/baselines.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "contracts/market.hpp"
#include "contracts/solvers.hpp"

namespace contracts {
namespace {

constexpr double kProfitEps = 1e-12;

// Grid contracts, buyer costs and seller utilities, laid out x-major:
// contract k has x index k / np and price index k % np.
struct GridTable {
  std::vector<double> xs, ps;
  std::size_t nx = 0, np = 0, n = 0, k_types = 0;
  long kmin = 0;
  double dp = 0.0;
  std::vector<double> cost;        // [type * n + k]
  std::vector<double> util;        // [k]
  std::vector<double> supplement;  // [type * nx + ix]
  std::vector<double> reserve, weight;

  Contract at(std::size_t k) const { return {xs[k / np], ps[k % np]}; }
};

GridTable build_table(const MarketInstance& inst, const GridSpec& g) {
  GridTable t;
  t.dp = g.dp;
  const std::size_t nx =
      static_cast<std::size_t>(std::floor(*g.x_max / g.dx + kTolerance));
  for (std::size_t i = 1; i <= nx; ++i) t.xs.push_back(static_cast<double>(i) * g.dx);

  long kmin = std::max(0L, static_cast<long>(std::floor((inst.c + kTolerance) / g.dp)) + 1);
  while (kmin > 0 && static_cast<double>(kmin - 1) * g.dp > inst.c + kTolerance) --kmin;
  while (static_cast<double>(kmin) * g.dp <= inst.c + kTolerance) ++kmin;
  const long kmax = static_cast<long>(std::floor((*g.p_max + kTolerance) / g.dp));
  for (long k = kmin; k <= kmax; ++k) t.ps.push_back(static_cast<double>(k) * g.dp);
  t.kmin = kmin;

  t.nx = t.xs.size();
  t.np = t.ps.size();
  t.n = t.nx * t.np;
  t.k_types = inst.types.size();
  t.cost.resize(t.k_types * t.n);
  t.util.resize(t.n);
  t.supplement.resize(t.k_types * t.nx);
  for (std::size_t k = 0; k < t.n; ++k) t.util[k] = t.at(k).seller_utility(inst.c);
  for (std::size_t i = 0; i < t.k_types; ++i) {
    const BuyerType& bt = inst.types[i];
    t.reserve.push_back(bt.reserve_price());
    t.weight.push_back(bt.r);
    for (std::size_t ix = 0; ix < t.nx; ++ix) {
      t.supplement[i * t.nx + ix] = required_supplement(bt, t.xs[ix]);
    }
    for (std::size_t k = 0; k < t.n; ++k) t.cost[i * t.n + k] = buyer_cost(bt, t.at(k));
  }
  return t;
}

// Profit of the menu made of the given grid contracts (at most 3 here).
template <std::size_t N>
double table_profit(const GridTable& t, const std::array<std::size_t, N>& menu,
                    std::size_t used) {
  std::array<Offer, N + 1> offers;
  double profit = 0.0;
  for (std::size_t i = 0; i < t.k_types; ++i) {
    offers[0] = {t.reserve[i], 0.0, 0.0};
    for (std::size_t j = 0; j < used; ++j) {
      const std::size_t k = menu[j];
      offers[j + 1] = {t.cost[i * t.n + k], t.util[k], t.xs[k / t.np]};
    }
    const std::size_t pick = choose_offer(std::span<const Offer>(offers.data(), used + 1));
    if (pick > 0) profit += t.weight[i] * offers[pick].utility;
  }
  return profit;
}

double table_profit_any(const GridTable& t, const std::vector<std::size_t>& menu) {
  std::vector<Offer> offers(menu.size() + 1);
  double profit = 0.0;
  for (std::size_t i = 0; i < t.k_types; ++i) {
    offers[0] = {t.reserve[i], 0.0, 0.0};
    for (std::size_t j = 0; j < menu.size(); ++j) {
      const std::size_t k = menu[j];
      offers[j + 1] = {t.cost[i * t.n + k], t.util[k], t.xs[k / t.np]};
    }
    const std::size_t pick = choose_offer(offers);
    if (pick > 0) profit += t.weight[i] * offers[pick].utility;
  }
  return profit;
}

// Designates each type's choice, drops contracts nobody takes and reports
// the evaluated profit.
Solution finalize(const MarketInstance& inst, std::vector<Contract> contracts,
                  std::string method) {
  ContractMenu menu;
  menu.contracts = std::move(contracts);
  const EvalReport rep = evaluate(inst, menu);
  std::vector<Contract> per_type(inst.types.size());
  for (const TypeOutcome& o : rep.per_type) {
    if (o.contract_index) per_type[o.type] = o.chosen;
  }
  Solution s;
  s.menu = build_menu(per_type);
  s.expected_profit = evaluate(inst, s.menu).expected_profit;
  s.method = std::move(method);
  return s;
}

double choose_count(double n, int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v = v * (n + i) / (i + 1);
  return v;
}

void check_budget(double work, const GridSpec& g) {
  if (work > g.budget) {
    throw ValidationError("grid search needs " + std::to_string(work) +
                          " menu evaluations, over the budget of " +
                          std::to_string(g.budget));
  }
}

std::string grid_method(int M) { return "opt" + std::to_string(M); }

}  // namespace

GridSpec resolve_grid(const MarketInstance& inst, const GridSpec& grid) {
  if (!(grid.dx > 0.0) || !(grid.dp > 0.0)) {
    throw ValidationError("grid steps must be positive");
  }
  double widest = 0.0, top_b = 0.0;
  for (const BuyerType& t : inst.types) {
    widest = std::max(widest, knee(t).x_star);
    top_b = std::max(top_b, t.b);
  }
  GridSpec g = grid;
  if (!g.x_max) {
    const double steps = std::max(1.0, std::ceil(widest / g.dx - kTolerance));
    g.x_max = steps * g.dx;
  } else if (*g.x_max < widest - kTolerance) {
    throw ValidationError("grid x_max is below the widest knee");
  }
  if (!g.p_max) {
    g.p_max = top_b;
  } else if (*g.p_max < top_b - kTolerance) {
    throw ValidationError("grid p_max is below the largest b");
  }
  return g;
}

Solution grid_opt(const MarketInstance& inst, int M, const GridSpec& grid) {
  if (M < 1) throw ValidationError("M must be at least 1");
  if (M > 2) {
    if (!grid.allow_large_m) {
      throw ValidationError("grid search with M > 2 needs the large-M override");
    }
    return grid_opt_exhaustive(inst, M, grid);
  }
  require_valid(inst);
  const GridSpec g = resolve_grid(inst, grid);
  const GridTable t = build_table(inst, g);

  const double work = static_cast<double>(t.n) *
                      (1.0 + (M == 2 ? static_cast<double>(t.nx) * (3.0 * t.k_types + 1.0) : 0.0));
  check_budget(work, g);

  double best = 0.0;
  std::array<std::size_t, 2> best_menu{};
  std::size_t best_used = 0;

  for (std::size_t a = 0; a < t.n; ++a) {
    const double v = table_profit<2>(t, {a, 0}, 1);
    if (v > best + kProfitEps) {
      best = v;
      best_menu = {a, 0};
      best_used = 1;
    }
  }

  if (M == 2) {
    std::vector<double> alt_cost(t.k_types);
    std::vector<long> cand;
    for (std::size_t a = 0; a < t.n; ++a) {
      // What each type does when only contract a is on offer.
      for (std::size_t i = 0; i < t.k_types; ++i) {
        const double ca = t.cost[i * t.n + a];
        const std::array<Offer, 2> offers{Offer{t.reserve[i], 0.0, 0.0},
                                          Offer{ca, t.util[a], t.xs[a / t.np]}};
        alt_cost[i] = choose_offer(offers) == 0 ? t.reserve[i] : ca;
      }
      for (std::size_t ix = 0; ix < t.nx; ++ix) {
        const double x = t.xs[ix];
        // Type i switches to a column-ix contract once its price drops to
        // tau_i; between thresholds the set of switchers is fixed and the
        // profit rises with price, so only the last grid price before (or
        // at) each threshold matters.
        cand.clear();
        cand.push_back(static_cast<long>(t.np) - 1);
        for (std::size_t i = 0; i < t.k_types; ++i) {
          const double tau = (alt_cost[i] - t.supplement[i * t.nx + ix]) / x;
          double j0 = std::floor(tau / t.dp) - static_cast<double>(t.kmin);
          j0 = std::clamp(j0, -2.0, static_cast<double>(t.np) + 1.0);
          for (long d = -1; d <= 1; ++d) {
            const long j = static_cast<long>(j0) + d;
            if (j >= 0 && j < static_cast<long>(t.np)) cand.push_back(j);
          }
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (long j : cand) {
          const std::size_t b = ix * t.np + static_cast<std::size_t>(j);
          const double v = table_profit<2>(t, {a, b}, 2);
          if (v > best + kProfitEps) {
            best = v;
            best_menu = {std::min(a, b), std::max(a, b)};
            best_used = 2;
          }
        }
      }
    }
  }

  std::vector<Contract> chosen;
  for (std::size_t j = 0; j < best_used; ++j) chosen.push_back(t.at(best_menu[j]));
  Solution s = finalize(inst, std::move(chosen), grid_method(M));
  s.grid = g;
  return s;
}

Solution grid_opt_exhaustive(const MarketInstance& inst, int M,
                             const GridSpec& grid) {
  if (M < 1) throw ValidationError("M must be at least 1");
  require_valid(inst);
  const GridSpec g = resolve_grid(inst, grid);
  const GridTable t = build_table(inst, g);

  double work = 0.0;
  for (int m = 1; m <= M; ++m) work += choose_count(static_cast<double>(t.n), m);
  check_budget(work, g);

  double best = 0.0;
  std::vector<std::size_t> best_menu, cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (!cur.empty()) {
      const double v = table_profit_any(t, cur);
      if (v > best + kProfitEps) {
        best = v;
        best_menu = cur;
      }
    }
    if (left == 0) return;
    for (std::size_t k = from; k < t.n; ++k) {
      cur.push_back(k);
      rec(k, left - 1);
      cur.pop_back();
    }
  };
  rec(0, M);

  std::vector<Contract> chosen;
  for (std::size_t k : best_menu) chosen.push_back(t.at(k));
  Solution s = finalize(inst, std::move(chosen), grid_method(M));
  s.grid = g;
  return s;
}

Solution max_single(const MarketInstance& inst) {
  Solution best;
  best.method = "max";
  for (const BuyerType& t : inst.types) {
    const KneePoint k = knee(t);
    if (!(k.x_star > 0.0)) continue;
    ContractMenu menu;
    menu.contracts.push_back(k.contract());
    const double v = evaluate(inst, menu).expected_profit;
    if (best.menu.empty() || v > best.expected_profit + kProfitEps) {
      best = finalize(inst, menu.contracts, "max");
    }
  }
  return best;
}

double oracle_cost(const BuyerType& t, const Contract& k) {
  auto feasible = [&](double y) { return expected_loss(t, k.x, y) <= t.epsilon; };
  if (feasible(0.0)) return k.x * k.p;
  double lo = 0.0, hi = t.q;  // y = q always meets the constraint
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi + k.x * k.p;
}

Solution oracle_vertex_enum(const MarketInstance& inst, std::size_t max_types) {
  if (inst.types.size() > max_types) {
    throw ValidationError("vertex enumeration limited to " + std::to_string(max_types) +
                          " types");
  }
  if (!check_mc(inst)) {
    throw ValidationError("instance does not satisfy the monotonicity condition");
  }
  const auto ord = detail::order_by_b(inst);
  const std::size_t K = ord.size();
  std::vector<BuyerType> sorted(K);
  std::vector<double> width(K);
  for (std::size_t i = 0; i < K; ++i) {
    sorted[i] = inst.types[ord[i]];
    width[i] = knee(sorted[i]).x_star;
  }

  Solution best;
  best.method = "vertex-enum";
  bool have = false;
  std::vector<double> xs(K, 0.0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double floor_x) {
    if (i == K) {
      const auto priced = detail::cascade_prices(sorted, xs);
      std::vector<Contract> per_type(K);
      for (std::size_t j = 0; j < K; ++j) per_type[ord[j]] = priced[j];
      ContractMenu menu = build_menu(per_type);
      const double v = evaluate(inst, menu).expected_profit;
      if (!have || v > best.expected_profit + kProfitEps) {
        best.menu = std::move(menu);
        best.expected_profit = v;
        have = true;
      }
      return;
    }
    std::vector<double> options{0.0};
    for (std::size_t j = 0; j <= i; ++j) {
      if (width[j] <= width[i]) options.push_back(width[j]);
    }
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    for (double v : options) {
      if (v < floor_x) continue;
      xs[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, 0.0);
  return best;
}

Solution oracle_subset_enum(const MarketInstance& inst, int M) {
  const std::size_t K = inst.types.size();
  if (K == 0) throw ValidationError("instance has no types");
  if (K > 12) throw ValidationError("subset enumeration limited to 12 types");
  for (const BuyerType& t : inst.types) {
    if (t.b != inst.types.front().b) throw ValidationError("types do not share a common b");
  }
  Solution best;
  best.method = "subset-enum";
  for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
    if (std::popcount(mask) > M) continue;
    ContractMenu menu;
    for (std::size_t i = 0; i < K; ++i) {
      if (mask & (1u << i)) menu.contracts.push_back(knee(inst.types[i]).contract());
    }
    const double v = evaluate(inst, menu).expected_profit;
    if (v > best.expected_profit + kProfitEps) {
      best = finalize(inst, menu.contracts, "subset-enum");
    }
  }
  return best;
}

}  // namespace contracts
