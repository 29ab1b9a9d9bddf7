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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contracts/types.hpp"

namespace contracts {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trial `trial` at type count K. Independent of scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t K, std::size_t trial);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& gen);

/// Random instance: b ~ U(0,1), q ~ U(0,10), eps ~ U(0,2) per type and r
/// from normalized U(0,1) draws. A type with q < eps, b <= c or b within
/// 1e-6 of 0 or 1 is redrawn on its own. With mc_only the whole instance is
/// redrawn until check_mc passes. Throws ValidationError after 10^6
/// rejections.
MarketInstance gen_instance(std::size_t K, std::uint64_t seed, double c,
                            bool mc_only);

enum class SweepMethod { kOpt1, kOpt2, kAlg, kMax };

std::string to_string(SweepMethod m);
/// Throws ValidationError for an unknown name.
SweepMethod parse_sweep_method(const std::string& name);

struct SweepConfig {
  std::size_t k_min = 1;
  std::size_t k_max = 7;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double c = 0.0;
  std::vector<SweepMethod> methods{SweepMethod::kOpt1, SweepMethod::kOpt2,
                                   SweepMethod::kAlg, SweepMethod::kMax};
  bool mc_only = false;
  GridSpec grid;
  unsigned workers = 1;  // threads; results do not depend on it
};

struct SweepRow {
  std::size_t K = 0;
  SweepMethod method = SweepMethod::kOpt1;
  double mean_profit = 0.0;
  double stderr_profit = 0.0;
  std::size_t trials = 0;
};

struct TrialRecord {
  std::size_t K = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool mc = false;
  double x_max = 0.0;  // resolved grid bounds of this instance
  double p_max = 0.0;
  std::vector<double> profits;  // parallel to SweepConfig::methods
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;        // K-major, methods in config order
  std::vector<TrialRecord> records;  // K-major, trial order
};

/// Runs every requested method on `trials` fresh instances per K and
/// aggregates evaluated profits. Errors carry K, trial and instance seed.
SweepResult sweep(const SweepConfig& cfg);

/// Header `K,method,mean_profit,stderr,trials,seed,c,dx,dp` then one row
/// per (K, method). Floats are written in shortest round-trip form.
std::string to_csv(const SweepResult& result);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

enum class CurveKind { kBoundary, kEqualCost };

struct CurveRequest {
  CurveKind kind = CurveKind::kBoundary;
  std::size_t n = 100;
  double x_ref = 0.0;  // equal-cost mode only
  double p_ref = 0.0;
  double x_hi = 0.0;   // <= 0: twice the larger of x* and x_ref
};

/// n points x_hi*k/n, k = 1..n, on the acceptance boundary or on the
/// equal-cost line through (x_ref, p_ref). Throws ValidationError for
/// n < 2 or x_ref <= 0 in equal-cost mode.
std::vector<Contract> sample_curves(const BuyerType& t, const CurveRequest& req);

/// Header `x,p` then one line per point.
std::string curves_to_csv(const std::vector<Contract>& pts);

}  // namespace contracts
