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

#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "contracts/baselines.hpp"
#include "contracts/harness.hpp"
#include "contracts/json_io.hpp"
#include "contracts/market.hpp"
#include "contracts/solvers.hpp"

namespace contracts::cli {
namespace {

struct GridFlags {
  double dx = 0.5;
  double dp = 0.1;
  std::optional<double> x_max, p_max;
  double budget = 5e7;
  bool allow_large_m = false;

  GridSpec spec() const { return {dx, dp, x_max, p_max, budget, allow_large_m}; }
};

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("--dx", g.dx, "Grid step in bandwidth")->check(CLI::PositiveNumber);
  app->add_option("--dp", g.dp, "Grid step in price")->check(CLI::PositiveNumber);
  app->add_option("--x-max", g.x_max, "Largest grid bandwidth");
  app->add_option("--p-max", g.p_max, "Largest grid price");
  app->add_option("--budget", g.budget, "Maximum menu evaluations for grid search");
  app->add_flag("--allow-large-m", g.allow_large_m, "Permit grid search with M > 2");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

MarketInstance load_instance(const std::string& path, std::optional<double> c) {
  MarketInstance inst = decode_instance(read_file(path));
  if (c) {
    inst.c = *c;
    require_valid(inst);
  }
  return inst;
}

Solution solve_with(const std::string& method, const MarketInstance& inst, int M,
                    const GridSpec& grid) {
  if (method == "auto") return solve_auto(inst, M, grid);
  if (method == "single") {
    if (inst.size() != 1) throw ValidationError("method single needs exactly one type");
    Solution s = solve_single(inst.types.front(), inst.c);
    s.expected_profit *= inst.types.front().r;
    return s;
  }
  if (method == "common-b") return solve_common_b(inst, M > 0 ? M : static_cast<int>(inst.size()));
  if (method == "two-type") return solve_two_type(inst, M > 0 ? M : 2);
  if (method == "mc") return solve_mc(inst);
  if (method == "alg") return solve_alg(inst);
  if (method == "grid") return grid_opt(inst, M > 0 ? M : 2, grid);
  if (method == "max") return max_single(inst);
  throw ValidationError("unknown method '" + method + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Profit-maximizing contract menus for stochastic bandwidth"};
  app.name("contract-menus");
  app.require_subcommand(1);

  // solve
  std::string s_in, s_out, s_report, s_method = "auto";
  int s_M = 0;
  std::optional<double> s_c;
  std::optional<std::uint64_t> s_seed;
  GridFlags s_grid;
  auto* solve = app.add_subcommand("solve", "Compute a menu for an instance");
  solve->add_option("--in", s_in, "Instance JSON")->required();
  solve->add_option("--out", s_out, "Menu JSON destination");
  solve->add_option("--report", s_report, "Report JSON destination");
  solve->add_option("--method", s_method, "Solver")
      ->check(CLI::IsMember({"auto", "single", "common-b", "two-type", "mc", "alg", "grid",
                             "max"}));
  solve->add_option("--M", s_M, "Menu size (0: as many as useful)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--c", s_c, "Override the seller cost");
  solve->add_option("--seed", s_seed, "Seed recorded in the report");
  add_grid_flags(solve, s_grid);

  // eval
  std::string e_in, e_menu, e_out;
  std::optional<double> e_c;
  auto* eval = app.add_subcommand("eval", "Evaluate a menu against an instance");
  eval->add_option("--in", e_in, "Instance JSON")->required();
  eval->add_option("--menu", e_menu, "Menu JSON")->required();
  eval->add_option("--out", e_out, "Report JSON destination");
  eval->add_option("--c", e_c, "Override the seller cost");

  // gen
  std::size_t g_K = 1;
  std::uint64_t g_seed = 0;
  double g_c = 0.0;
  bool g_mc = false;
  std::string g_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--K", g_K, "Number of types")->check(CLI::PositiveNumber);
  gen->add_option("--seed", g_seed, "Random seed");
  gen->add_option("--c", g_c, "Seller cost");
  gen->add_flag("--mc-only", g_mc, "Only instances meeting the monotonicity condition");
  gen->add_option("--out", g_out, "Instance JSON destination");

  // sweep
  SweepConfig w_cfg;
  std::string w_methods = "opt1,opt2,alg,max", w_out;
  GridFlags w_grid;
  auto* sw = app.add_subcommand("sweep", "Average profits over random instances");
  sw->add_option("--k-min", w_cfg.k_min, "Smallest K")->check(CLI::PositiveNumber);
  sw->add_option("--k-max", w_cfg.k_max, "Largest K")->check(CLI::PositiveNumber);
  sw->add_option("--trials", w_cfg.trials, "Instances per K")->check(CLI::PositiveNumber);
  sw->add_option("--seed", w_cfg.seed, "Random seed");
  sw->add_option("--c", w_cfg.c, "Seller cost");
  sw->add_option("--methods", w_methods, "Comma list of opt1,opt2,alg,max");
  sw->add_flag("--mc-only", w_cfg.mc_only, "Only instances meeting the monotonicity condition");
  sw->add_option("--workers", w_cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--out", w_out, "CSV destination");
  add_grid_flags(sw, w_grid);

  // curves
  std::string c_in, c_mode = "boundary", c_out;
  std::size_t c_type = 0;
  CurveRequest c_req;
  std::optional<double> c_x_ref, c_p_ref;
  auto* curves = app.add_subcommand("curves", "Sample a boundary or equal-cost line");
  curves->add_option("--in", c_in, "Instance JSON")->required();
  curves->add_option("--type", c_type, "Type index");
  curves->add_option("--mode", c_mode, "boundary or equal-cost")
      ->check(CLI::IsMember({"boundary", "equal-cost"}));
  curves->add_option("--x-ref", c_x_ref, "Reference bandwidth (equal-cost)");
  curves->add_option("--p-ref", c_p_ref, "Reference price (equal-cost)");
  curves->add_option("-n", c_req.n, "Number of points");
  curves->add_option("--x-hi", c_req.x_hi, "Right end of the sampled range");
  curves->add_option("--out", c_out, "CSV destination");

  // knapsack
  std::string k_in, k_out;
  std::optional<double> k_W;
  auto* knap = app.add_subcommand("knapsack", "Full-information allocation under a cap");
  knap->add_option("--in", k_in, "Instance JSON")->required();
  knap->add_option("--W", k_W, "Bandwidth cap (default: the instance's)");
  knap->add_option("--out", k_out, "Allocation JSON destination");

  std::vector<std::string> argv_store{"contract-menus"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*solve) {
      const MarketInstance inst = load_instance(s_in, s_c);
      const GridSpec grid = s_grid.spec();
      const Solution s = solve_with(s_method, inst, s_M, grid);
      EvalReport rep = evaluate(inst, s.menu);
      rep.metadata.solver = s.method;
      rep.metadata.grid = s.grid;
      rep.metadata.seed = s_seed;
      if (s_method == "auto") rep.metadata.notes.push_back("auto selected " + s.method);
      if (s_out.empty()) {
        const nlohmann::ordered_json both{{"menu", menu_to_json(s.menu)},
                                  {"report", report_to_json(rep)}};
        emit("", both.dump(2) + "\n", out);
      } else {
        emit(s_out, encode(s.menu), out);
        emit(s_report, encode(rep), out);
      }
    } else if (*eval) {
      const MarketInstance inst = load_instance(e_in, e_c);
      const ContractMenu menu = decode_menu(read_file(e_menu));
      EvalReport rep = evaluate(inst, menu);
      rep.metadata.solver = "eval";
      emit(e_out, encode(rep), out);
    } else if (*gen) {
      emit(g_out, encode(gen_instance(g_K, g_seed, g_c, g_mc)), out);
    } else if (*sw) {
      w_cfg.methods.clear();
      for (const std::string& m : split_list(w_methods)) {
        w_cfg.methods.push_back(parse_sweep_method(m));
      }
      w_cfg.grid = w_grid.spec();
      emit(w_out, to_csv(sweep(w_cfg)), out);
    } else if (*curves) {
      const MarketInstance inst = decode_instance(read_file(c_in));
      if (c_type >= inst.size()) throw ValidationError("type index out of range");
      if (c_mode == "equal-cost") {
        if (!c_x_ref || !c_p_ref) {
          throw ValidationError("equal-cost mode needs --x-ref and --p-ref");
        }
        c_req.kind = CurveKind::kEqualCost;
        c_req.x_ref = *c_x_ref;
        c_req.p_ref = *c_p_ref;
      }
      emit(c_out, curves_to_csv(sample_curves(inst.types[c_type], c_req)), out);
    } else if (*knap) {
      const MarketInstance inst = decode_instance(read_file(k_in));
      const std::optional<double> W = k_W ? k_W : inst.bandwidth_cap;
      if (!W) throw ValidationError("no bandwidth cap: pass --W or set bandwidth_cap");
      const auto alloc = knapsack_allocate(inst, *W);
      emit(k_out, allocation_to_json(inst, *W, alloc).dump(2) + "\n", out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace contracts::cli
