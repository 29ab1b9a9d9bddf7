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

#include "contracts/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "contracts/baselines.hpp"
#include "contracts/market.hpp"
#include "contracts/solvers.hpp"

namespace contracts {
namespace {

constexpr double kEdge = 1e-6;
constexpr std::size_t kMaxRejections = 1000000;

BuyerType draw_type(std::mt19937_64& gen, double c, std::size_t& rejections) {
  for (;;) {
    BuyerType t;
    t.b = uniform01(gen);
    t.q = 10.0 * uniform01(gen);
    t.epsilon = 2.0 * uniform01(gen);
    if (t.q >= t.epsilon && t.b > c && t.b > kEdge && t.b < 1.0 - kEdge) return t;
    if (++rejections > kMaxRejections) {
      throw ValidationError("gen_instance: too many rejected draws");
    }
  }
}

double run_method(SweepMethod m, const MarketInstance& inst, const GridSpec& grid) {
  Solution s;
  switch (m) {
    case SweepMethod::kOpt1: s = grid_opt(inst, 1, grid); break;
    case SweepMethod::kOpt2: s = grid_opt(inst, 2, grid); break;
    case SweepMethod::kAlg: s = solve_alg(inst); break;
    case SweepMethod::kMax: s = max_single(inst); break;
  }
  return evaluate(inst, s.menu).expected_profit;
}

TrialRecord run_trial(const SweepConfig& cfg, std::size_t K, std::size_t trial) {
  TrialRecord rec;
  rec.K = K;
  rec.trial = trial;
  rec.seed = trial_seed(cfg.seed, K, trial);
  const std::string where = " (K=" + std::to_string(K) + ", trial=" +
                            std::to_string(trial) + ", seed=" +
                            std::to_string(rec.seed) + ")";
  try {
    const MarketInstance inst = gen_instance(K, rec.seed, cfg.c, cfg.mc_only);
    rec.mc = check_mc(inst);
    const GridSpec g = resolve_grid(inst, cfg.grid);
    rec.x_max = *g.x_max;
    rec.p_max = *g.p_max;
    for (SweepMethod m : cfg.methods) rec.profits.push_back(run_method(m, inst, cfg.grid));
  } catch (const ValidationError& e) {
    throw ValidationError(e.what() + where);
  } catch (const std::exception& e) {
    throw std::runtime_error(e.what() + where);
  }
  return rec;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t K, std::size_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ K) ^ trial);
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

MarketInstance gen_instance(std::size_t K, std::uint64_t seed, double c,
                            bool mc_only) {
  if (K < 1) throw ValidationError("gen_instance: K must be at least 1");
  if (!(c >= 0.0 && c < 1.0 - kEdge)) {
    throw ValidationError("gen_instance: c must lie in [0, 1)");
  }
  std::mt19937_64 gen(seed);
  std::size_t rejections = 0;
  for (;;) {
    MarketInstance inst;
    inst.c = c;
    inst.types.reserve(K);
    for (std::size_t i = 0; i < K; ++i) inst.types.push_back(draw_type(gen, c, rejections));
    double total = 0.0;
    for (BuyerType& t : inst.types) {
      // (0, 1] keeps every weight positive
      t.r = 1.0 - uniform01(gen);
      total += t.r;
    }
    for (BuyerType& t : inst.types) t.r /= total;
    if (!mc_only || check_mc(inst)) return inst;
    if (++rejections > kMaxRejections) {
      throw ValidationError("gen_instance: too many rejected draws");
    }
  }
}

std::string to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::kOpt1: return "opt1";
    case SweepMethod::kOpt2: return "opt2";
    case SweepMethod::kAlg: return "alg";
    case SweepMethod::kMax: return "max";
  }
  return "?";
}

SweepMethod parse_sweep_method(const std::string& name) {
  for (SweepMethod m : {SweepMethod::kOpt1, SweepMethod::kOpt2, SweepMethod::kAlg,
                        SweepMethod::kMax}) {
    if (to_string(m) == name) return m;
  }
  throw ValidationError("unknown sweep method '" + name + "'");
}

SweepResult sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("sweep: trials must be at least 1");
  if (cfg.methods.empty()) throw ValidationError("sweep: no methods requested");
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) {
    throw ValidationError("sweep: K range must satisfy 1 <= k-min <= k-max");
  }

  SweepResult out;
  out.config = cfg;
  const std::size_t nk = cfg.k_max - cfg.k_min + 1;
  const std::size_t total = nk * cfg.trials;
  out.records.resize(total);

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, total));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t j = w; j < total; j += workers) {
        out.records[j] = run_trial(cfg, cfg.k_min + j / cfg.trials, j % cfg.trials);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      double sum = 0.0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        sum += out.records[k * cfg.trials + t].profits[m];
      }
      const double n = static_cast<double>(cfg.trials);
      const double mean = sum / n;
      double ss = 0.0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const double d = out.records[k * cfg.trials + t].profits[m] - mean;
        ss += d * d;
      }
      SweepRow row;
      row.K = cfg.k_min + k;
      row.method = cfg.methods[m];
      row.mean_profit = mean;
      row.stderr_profit = cfg.trials > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
      row.trials = cfg.trials;
      out.rows.push_back(row);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SweepResult& result) {
  const SweepConfig& cfg = result.config;
  std::ostringstream os;
  os << "K,method,mean_profit,stderr,trials,seed,c,dx,dp\n";
  for (const SweepRow& r : result.rows) {
    os << r.K << ',' << to_string(r.method) << ',' << format_double(r.mean_profit)
       << ',' << format_double(r.stderr_profit) << ',' << r.trials << ',' << cfg.seed
       << ',' << format_double(cfg.c) << ',' << format_double(cfg.grid.dx) << ','
       << format_double(cfg.grid.dp) << '\n';
  }
  return os.str();
}

std::vector<Contract> sample_curves(const BuyerType& t, const CurveRequest& req) {
  if (req.n < 2) throw ValidationError("curves: need at least 2 points");
  const double x_star = knee(t).x_star;
  if (req.kind == CurveKind::kEqualCost && !(req.x_ref > 0.0)) {
    throw ValidationError("curves: reference quantity must be > 0");
  }
  double hi = req.x_hi;
  if (!(hi > 0.0)) {
    hi = 2.0 * std::max(x_star, req.kind == CurveKind::kEqualCost ? req.x_ref : 0.0);
  }
  if (!(hi > 0.0)) throw ValidationError("curves: empty sampling range");

  std::vector<Contract> pts;
  pts.reserve(req.n);
  for (std::size_t k = 1; k <= req.n; ++k) {
    const double x = hi * static_cast<double>(k) / static_cast<double>(req.n);
    const double p = req.kind == CurveKind::kBoundary
                         ? t.b * std::min(x, x_star) / x
                         : equivalent_price(t, req.x_ref, req.p_ref, x);
    pts.push_back({x, p});
  }
  return pts;
}

std::string curves_to_csv(const std::vector<Contract>& pts) {
  std::string s = "x,p\n";
  for (const Contract& k : pts) s += format_double(k.x) + "," + format_double(k.p) + "\n";
  return s;
}

}  // namespace contracts
