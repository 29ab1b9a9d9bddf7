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

#include "contracts/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "contracts/baselines.hpp"
#include "contracts/market.hpp"

namespace contracts {
namespace {

Solution finish(const MarketInstance& inst, ContractMenu menu,
                std::string method) {
  Solution s;
  s.expected_profit = evaluate(inst, menu).expected_profit;
  s.menu = std::move(menu);
  s.method = std::move(method);
  return s;
}

// Menu built from per-type intended contracts given in caller order.
Solution from_assignment(const MarketInstance& inst,
                         const std::vector<Contract>& per_type,
                         std::string method) {
  return finish(inst, build_menu(per_type), std::move(method));
}

bool shares_common_b(const MarketInstance& inst) {
  return std::all_of(inst.types.begin(), inst.types.end(),
                     [&](const BuyerType& t) { return t.b == inst.types.front().b; });
}

}  // namespace

Solution solve_single(const BuyerType& t, double c) {
  if (t.b <= c) throw ValidationError("type has b ≤ c; nothing to sell");
  const KneePoint k = knee(t);
  Solution s;
  s.method = "single";
  if (k.x_star > 0.0) {
    s.menu.contracts.push_back(k.contract());
    s.menu.designated[0] = 0;
    s.expected_profit = k.contract().seller_utility(c);
  }
  return s;
}

Solution solve_common_b(const MarketInstance& inst, int M) {
  if (inst.types.empty()) throw ValidationError("instance has no types");
  if (!shares_common_b(inst)) {
    throw ValidationError("types do not share a common b");
  }
  if (M < 1) throw ValidationError("M must be at least 1");
  const double b = inst.types.front().b;
  if (b <= inst.c) throw ValidationError("common b ≤ c");

  const std::size_t K = inst.types.size();
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> width(K);
  for (std::size_t i = 0; i < K; ++i) width[i] = knee(inst.types[i]).x_star;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b2) { return width[a] < width[b2]; });

  std::vector<Contract> per_type(K);
  Solution s;
  s.method = "common-b";

  if (static_cast<std::size_t>(M) >= K) {
    for (std::size_t i = 0; i < K; ++i) {
      per_type[i] = {width[i], b};
      s.expected_profit += inst.types[i].r * width[i] * (b - inst.c);
    }
    s.menu = build_menu(per_type);
    return s;
  }

  // 1-based over the sorted order. tail[i] = r_i + ... + r_K.
  const std::size_t m_max = static_cast<std::size_t>(M);
  std::vector<double> xs(K + 2, 0.0), tail(K + 2, 0.0);
  for (std::size_t i = 1; i <= K; ++i) xs[i] = width[order[i - 1]];
  for (std::size_t i = K; i >= 1; --i) tail[i] = tail[i + 1] + inst.types[order[i - 1]].r;

  const double margin = b - inst.c;
  std::vector<std::vector<double>> g(m_max + 1, std::vector<double>(K + 2, 0.0));
  std::vector<std::vector<std::size_t>> next(m_max + 1,
                                             std::vector<std::size_t>(K + 2, 0));
  for (std::size_t i = 1; i <= K; ++i) g[1][i] = xs[i] * margin * tail[i];
  for (std::size_t m = 2; m <= m_max; ++m) {
    for (std::size_t i = 1; i + m <= K + 1; ++i) {
      double best = -1.0;
      for (std::size_t j = i + 1; j <= K - m + 2; ++j) {
        const double v = g[m - 1][j] + xs[i] * margin * (tail[i] - tail[j]);
        if (v > best) {
          best = v;
          next[m][i] = j;
        }
      }
      g[m][i] = best;
    }
  }

  std::size_t start = 1;
  for (std::size_t i = 2; i + m_max <= K + 1; ++i) {
    if (g[m_max][i] > g[m_max][start]) start = i;
  }
  s.expected_profit = g[m_max][start];

  // Back-trace: types in [pick_k, pick_{k+1}) take knee pick_k.
  std::vector<std::size_t> picks;
  for (std::size_t m = m_max, i = start; m >= 1; --m) {
    picks.push_back(i);
    if (m > 1) i = next[m][i];
  }
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const std::size_t lo = picks[k];
    const std::size_t hi = k + 1 < picks.size() ? picks[k + 1] : K + 1;
    for (std::size_t l = lo; l < hi; ++l) per_type[order[l - 1]] = {xs[lo], b};
  }
  s.menu = build_menu(per_type);
  return s;
}

std::optional<Contract> boundary_intersection(const BuyerType& t1,
                                              const BuyerType& t2) {
  const KneePoint k1 = knee(t1);
  const KneePoint k2 = knee(t2);
  if (accepts(t2, k1.contract()) || accepts(t1, k2.contract())) {
    return std::nullopt;
  }
  // Canonical order keeps the arithmetic identical under argument swap.
  const bool swap = t2.b < t1.b || (t2.b == t1.b && k2.x_star < k1.x_star);
  const KneePoint& lo = swap ? k2 : k1;
  const KneePoint& hi = swap ? k1 : k2;

  // Each boundary is a flat piece p = b on (0, x*] and a hyperbola
  // p = b x*/x on [x*, inf). Try every pairing of pieces.
  const double area_lo = lo.p_star * lo.x_star;
  const double area_hi = hi.p_star * hi.x_star;
  struct Candidate {
    double x;
    double p;
  };
  std::vector<Candidate> found;
  // flat(lo) x hyperbola(hi)
  if (lo.p_star > 0.0) {
    const double x = area_hi / lo.p_star;
    if (x > 0.0 && x <= lo.x_star && x >= hi.x_star) found.push_back({x, lo.p_star});
  }
  // hyperbola(lo) x flat(hi)
  if (hi.p_star > 0.0) {
    const double x = area_lo / hi.p_star;
    if (x > 0.0 && x >= lo.x_star && x <= hi.x_star) found.push_back({x, hi.p_star});
  }
  // flat x flat and hyperbola x hyperbola only meet where the boundaries
  // coincide, which is never a proper crossing.
  if (found.empty()) return std::nullopt;
  return Contract{found.front().x, found.front().p};
}

Solution solve_two_type(const MarketInstance& inst, int M) {
  if (inst.types.size() != 2) {
    throw ValidationError("two-type solver needs exactly two types");
  }
  if (M != 1 && M != 2) throw ValidationError("two-type solver supports M = 1 or 2");

  const auto ord = detail::order_by_b(inst);
  const std::size_t i1 = ord[0], i2 = ord[1];
  const BuyerType& t1 = inst.types[i1];
  const BuyerType& t2 = inst.types[i2];
  const double c = inst.c;
  const KneePoint k1 = knee(t1), k2 = knee(t2);
  const Contract max1 = k1.contract(), max2 = k2.contract();
  const std::string method = "two-type";

  auto menu_of = [&](Contract for1, Contract for2) {
    std::vector<Contract> per(2);
    per[i1] = for1;
    per[i2] = for2;
    return per;
  };
  auto best_of = [&](const std::vector<std::vector<Contract>>& cands) {
    Solution best;
    bool have = false;
    for (const auto& per : cands) {
      Solution s = from_assignment(inst, per, method);
      if (!have || s.expected_profit > best.expected_profit + kTolerance) {
        best = std::move(s);
        have = true;
      }
    }
    return best;
  };

  const bool disjoint = k1.x_star > 0.0 && k2.x_star > 0.0 &&
                        !accepts(t2, max1) && !accepts(t1, max2);
  const std::optional<Contract> g =
      disjoint ? boundary_intersection(t1, t2) : std::nullopt;

  if (M == 1) {
    std::vector<std::vector<Contract>> cands;
    cands.push_back(menu_of(max1, accepts(t2, max1) ? max1 : Contract{}));
    cands.push_back(menu_of(accepts(t1, max2) ? max2 : Contract{}, max2));
    if (g) cands.push_back(menu_of(*g, *g));
    return best_of(cands);
  }

  if (disjoint) return from_assignment(inst, menu_of(max1, max2), method);
  if (k2.x_star == 0.0) return from_assignment(inst, menu_of(max1, Contract{}), method);

  if (k1.x_star <= k2.x_star) {
    const double slope = t1.r * (t1.b - c) - t2.r * (t2.b - t1.b);
    if (slope > 0.0) {
      const Contract second{k2.x_star,
                            t2.b - (k1.x_star / k2.x_star) * (t2.b - t1.b)};
      return from_assignment(inst, menu_of(max1, second), method);
    }
    return from_assignment(inst, menu_of(Contract{}, max2), method);
  }

  // x1* > x2*: only the endpoints x1 in {0, x1*} can be optimal.
  const double pooled_price = k1.x_star * t1.b / k2.x_star;
  const Contract second = pooled_price <= t2.b + kTolerance
                              ? Contract{k2.x_star, pooled_price}
                              : max2;
  return best_of({menu_of(Contract{}, max2), menu_of(max1, second)});
}

bool check_mc(const MarketInstance& inst) {
  const auto ord = detail::order_by_b(inst);
  double prev = -1.0;
  for (std::size_t i : ord) {
    const double w = knee(inst.types[i]).x_star;
    if (w < prev) return false;
    prev = w;
  }
  return true;
}

namespace detail {

std::vector<std::size_t> order_by_b(const MarketInstance& inst) {
  std::vector<std::size_t> ord(inst.types.size());
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::vector<double> width(inst.types.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = knee(inst.types[i]).x_star;
  std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
    const double ba = inst.types[a].b, bb = inst.types[b].b;
    return ba != bb ? ba < bb : width[a] < width[b];
  });
  return ord;
}

std::vector<double> last_determined_quantities(std::span<const BuyerType> types,
                                               std::span<const double> caps,
                                               double c) {
  const std::size_t K = types.size();
  std::vector<double> xs(K, 0.0);
  if (K == 0) return xs;
  // tail[i] = r_i + ... + r_{K-1}
  std::vector<double> tail(K + 1, 0.0);
  for (std::size_t i = K; i-- > 0;) tail[i] = tail[i + 1] + types[i].r;

  xs[K - 1] = caps[K - 1];
  std::size_t ld = K - 1;
  for (std::size_t i = K - 1; i-- > 0;) {
    // Marginal profit of raising the pending group i..ld-1 together.
    const double pi = (types[i].b - c) * (tail[i] - tail[ld]) -
                      (types[ld].b - types[i].b) * tail[ld];
    if (i == 0) {
      const double v = pi > 0.0 ? caps[0] : 0.0;
      for (std::size_t j = 0; j < ld; ++j) xs[j] = v;
      break;
    }
    if (pi > 0.0) {
      for (std::size_t j = i; j < ld; ++j) xs[j] = caps[i];
      ld = i;
    }
  }
  return xs;
}

std::vector<Contract> cascade_prices(std::span<const BuyerType> types,
                                     std::span<const double> xs) {
  std::vector<Contract> out(types.size());
  Contract prev{};
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (xs[i] <= 0.0) continue;  // (0, 0) carries forward
    out[i] = {xs[i], equivalent_price(types[i], prev, xs[i])};
    prev = out[i];
  }
  return out;
}

}  // namespace detail

namespace {

struct LdRun {
  std::vector<Contract> per_type;  // caller order
  double profit = 0.0;             // designated-choice profit
};

LdRun run_last_determined(const MarketInstance& inst, bool envelope) {
  const auto ord = detail::order_by_b(inst);
  const std::size_t K = ord.size();
  std::vector<BuyerType> sorted(K);
  std::vector<double> caps(K);
  for (std::size_t i = 0; i < K; ++i) {
    sorted[i] = inst.types[ord[i]];
    caps[i] = knee(sorted[i]).x_star;
  }
  if (envelope) {
    for (std::size_t i = K - 1; i-- > 0;) caps[i] = std::min(caps[i], caps[i + 1]);
  }
  const auto xs = detail::last_determined_quantities(sorted, caps, inst.c);
  const auto priced = detail::cascade_prices(sorted, xs);

  LdRun run;
  run.per_type.resize(K);
  for (std::size_t i = 0; i < K; ++i) {
    run.per_type[ord[i]] = priced[i];
    if (priced[i].x > 0.0) run.profit += sorted[i].r * priced[i].seller_utility(inst.c);
  }
  return run;
}

}  // namespace

Solution solve_mc(const MarketInstance& inst) {
  if (inst.types.empty()) throw ValidationError("instance has no types");
  if (!check_mc(inst)) {
    throw ValidationError("instance does not satisfy the monotonicity condition");
  }
  LdRun run = run_last_determined(inst, false);
  Solution s;
  s.method = "mc";
  s.menu = build_menu(run.per_type);
  s.expected_profit = run.profit;
  return s;
}

Solution solve_alg(const MarketInstance& inst) {
  if (inst.types.empty()) throw ValidationError("instance has no types");
  if (check_mc(inst)) {
    Solution s = solve_mc(inst);
    s.method = "alg";
    return s;
  }
  LdRun run = run_last_determined(inst, true);
  return from_assignment(inst, run.per_type, "alg");
}

ContractMenu price_cascade(const MarketInstance& inst, std::span<const double> xs) {
  const std::size_t K = inst.types.size();
  if (xs.size() != K) throw ValidationError("price_cascade: one quantity per type");
  for (std::size_t i = 0; i < K; ++i) {
    const BuyerType& t = inst.types[i];
    if (i > 0 && t.b < inst.types[i - 1].b) {
      throw ValidationError("price_cascade: types must be in nondecreasing b order");
    }
    if (!(xs[i] >= 0.0)) throw ValidationError("price_cascade: negative quantity");
    if (i > 0 && xs[i] < xs[i - 1]) {
      throw ValidationError("price_cascade: quantities must be nondecreasing");
    }
    if (xs[i] > knee(t).x_star + kTolerance) {
      throw ValidationError("price_cascade: quantity " + std::to_string(i) +
                            " exceeds the type's knee");
    }
  }
  if (!check_mc(inst)) {
    throw ValidationError("price_cascade: instance does not satisfy the monotonicity condition");
  }
  return build_menu(detail::cascade_prices(inst.types, xs));
}

Solution solve_auto(const MarketInstance& inst, int M, const GridSpec& grid) {
  require_valid(inst);
  const int K = static_cast<int>(inst.types.size());
  Solution s;
  if (K == 1) {
    s = solve_single(inst.types.front(), inst.c);
    s.expected_profit *= inst.types.front().r;
  } else if (shares_common_b(inst)) {
    s = solve_common_b(inst, M > 0 ? M : K);
  } else if (K == 2 && M != 1) {
    s = solve_two_type(inst, 2);
  } else if (K == 2) {
    s = solve_two_type(inst, 1);
  } else if (check_mc(inst) && (M == 0 || M >= K)) {
    s = solve_mc(inst);
  } else {
    s = grid_opt(inst, M > 0 ? M : 2, grid);
  }
  return s;
}

}  // namespace contracts
