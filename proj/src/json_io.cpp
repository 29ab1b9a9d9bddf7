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

#include "contracts/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>

namespace contracts {
namespace {

using json = nlohmann::ordered_json;

std::string kind_name(DecodeErrorKind k) {
  switch (k) {
    case DecodeErrorKind::kSyntax: return "syntax error";
    case DecodeErrorKind::kSchema: return "schema error";
    case DecodeErrorKind::kValidation: return "validation error";
  }
  return "error";
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw DecodeError(DecodeErrorKind::kSchema, path, msg);
}

std::string escape_key(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string at(const std::string& path, const std::string& key) {
  return path + "/" + escape_key(key);
}

void expect_object(const json& j, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      schema(at(path, item.key()), "unknown field '" + item.key() + "'");
    }
  }
}

const json& member(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema(at(path, key), std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  return v.get<double>();
}

double number(const json& j, const std::string& path, const char* key) {
  return as_number(member(j, path, key), at(path, key));
}

std::optional<double> nullable_number(const json& j, const std::string& path,
                                      const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return as_number(*it, at(path, key));
}

std::size_t as_index(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    schema(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

const json& array_member(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_array()) schema(at(path, key), "expected an array");
  return v;
}

json contract_json(const Contract& k) { return json{{"x", k.x}, {"p", k.p}}; }

Contract contract_from(const json& j, const std::string& path) {
  expect_object(j, path, {"x", "p"});
  return {number(j, path, "x"), number(j, path, "p")};
}

json grid_json(const GridSpec& g) {
  json j{{"dx", g.dx}, {"dp", g.dp}, {"budget", g.budget},
         {"allow_large_m", g.allow_large_m}};
  j["x_max"] = g.x_max ? json(*g.x_max) : json(nullptr);
  j["p_max"] = g.p_max ? json(*g.p_max) : json(nullptr);
  return j;
}

GridSpec grid_from(const json& j, const std::string& path) {
  expect_object(j, path, {"dx", "dp", "x_max", "p_max", "budget", "allow_large_m"});
  GridSpec g;
  g.dx = number(j, path, "dx");
  g.dp = number(j, path, "dp");
  g.x_max = nullable_number(j, path, "x_max");
  g.p_max = nullable_number(j, path, "p_max");
  if (j.contains("budget")) g.budget = number(j, path, "budget");
  if (j.contains("allow_large_m")) {
    const json& v = j.at("allow_large_m");
    if (!v.is_boolean()) schema(at(path, "allow_large_m"), "expected a boolean");
    g.allow_large_m = v.get<bool>();
  }
  return g;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DecodeError(DecodeErrorKind::kSyntax, "", e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

DecodeError::DecodeError(DecodeErrorKind kind, std::string path,
                         const std::string& msg)
    : ValidationError(kind_name(kind) + (path.empty() ? "" : " at " + path) + ": " + msg),
      kind_(kind),
      path_(std::move(path)) {}

json instance_to_json(const MarketInstance& inst) {
  json types = json::array();
  for (const BuyerType& t : inst.types) {
    types.push_back({{"q", t.q}, {"epsilon", t.epsilon}, {"b", t.b}, {"r", t.r}});
  }
  json j;
  j["c"] = inst.c;
  j["bandwidth_cap"] = inst.bandwidth_cap ? json(*inst.bandwidth_cap) : json(nullptr);
  j["types"] = std::move(types);
  return j;
}

MarketInstance instance_from_json(const json& j) {
  expect_object(j, "", {"c", "bandwidth_cap", "types"});
  MarketInstance inst;
  if (j.contains("c")) inst.c = number(j, "", "c");
  inst.bandwidth_cap = nullable_number(j, "", "bandwidth_cap");
  const json& types = array_member(j, "", "types");
  if (types.empty()) schema("/types", "at least one type");
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string path = "/types/" + std::to_string(i);
    const json& t = types[i];
    expect_object(t, path, {"q", "epsilon", "b", "r"});
    BuyerType bt;
    bt.q = number(t, path, "q");
    bt.epsilon = number(t, path, "epsilon");
    bt.b = number(t, path, "b");
    bt.r = number(t, path, "r");
    inst.types.push_back(bt);
  }
  const auto errs = validate(inst);
  if (!errs.empty()) throw DecodeError(DecodeErrorKind::kValidation, "", errs.front());
  return inst;
}

json menu_to_json(const ContractMenu& menu) {
  json contracts = json::array();
  for (const Contract& k : menu.contracts) contracts.push_back(contract_json(k));
  json designated = json::object();
  for (auto [type, idx] : menu.designated) designated[std::to_string(type)] = idx;
  return json{{"contracts", std::move(contracts)}, {"designated", std::move(designated)}};
}

ContractMenu menu_from_json(const json& j) {
  expect_object(j, "", {"contracts", "designated"});
  ContractMenu menu;
  const json& contracts = array_member(j, "", "contracts");
  for (std::size_t i = 0; i < contracts.size(); ++i) {
    const std::string path = "/contracts/" + std::to_string(i);
    const Contract k = contract_from(contracts[i], path);
    if (!(std::isfinite(k.x) && std::isfinite(k.p) && k.x >= 0.0 && k.p >= 0.0)) {
      throw DecodeError(DecodeErrorKind::kValidation, path,
                        "contract needs finite x >= 0 and p >= 0");
    }
    menu.contracts.push_back(k);
  }
  if (auto it = j.find("designated"); it != j.end()) {
    if (!it->is_object()) schema("/designated", "expected an object");
    for (const auto& item : it->items()) {
      const std::string path = at("/designated", item.key());
      const std::string& key = item.key();
      std::size_t type = 0;
      auto res = std::from_chars(key.data(), key.data() + key.size(), type);
      if (key.empty() || res.ec != std::errc() || res.ptr != key.data() + key.size()) {
        schema(path, "designation keys must be type indices");
      }
      const std::size_t idx = as_index(item.value(), path);
      if (idx >= menu.contracts.size()) {
        throw DecodeError(DecodeErrorKind::kValidation, path,
                          "designated contract index out of range");
      }
      menu.designated[type] = idx;
    }
  }
  return menu;
}

json report_to_json(const EvalReport& report) {
  json per_type = json::array();
  for (const TypeOutcome& o : report.per_type) {
    json e;
    e["type"] = o.type;
    e["contract"] = contract_json(o.chosen);
    e["contract_index"] = o.contract_index ? json(*o.contract_index) : json(nullptr);
    e["cost"] = o.cost;
    e["seller_utility"] = o.seller_utility;
    e["follows_designation"] = o.follows_designation;
    per_type.push_back(std::move(e));
  }
  const ReportMetadata& m = report.metadata;
  json meta;
  meta["solver"] = m.solver;
  meta["grid"] = m.grid ? grid_json(*m.grid) : json(nullptr);
  meta["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  meta["notes"] = m.notes;
  json j;
  j["expected_profit"] = report.expected_profit;
  j["per_type"] = std::move(per_type);
  j["metadata"] = std::move(meta);
  return j;
}

EvalReport report_from_json(const json& j) {
  expect_object(j, "", {"expected_profit", "per_type", "metadata"});
  EvalReport r;
  r.expected_profit = number(j, "", "expected_profit");
  const json& per_type = array_member(j, "", "per_type");
  for (std::size_t i = 0; i < per_type.size(); ++i) {
    const std::string path = "/per_type/" + std::to_string(i);
    const json& e = per_type[i];
    expect_object(e, path, {"type", "contract", "contract_index", "cost",
                            "seller_utility", "follows_designation"});
    TypeOutcome o;
    o.type = as_index(member(e, path, "type"), at(path, "type"));
    o.chosen = contract_from(member(e, path, "contract"), at(path, "contract"));
    if (auto it = e.find("contract_index"); it != e.end() && !it->is_null()) {
      o.contract_index = as_index(*it, at(path, "contract_index"));
    }
    o.cost = number(e, path, "cost");
    o.seller_utility = number(e, path, "seller_utility");
    const json& f = member(e, path, "follows_designation");
    if (!f.is_boolean()) schema(at(path, "follows_designation"), "expected a boolean");
    o.follows_designation = f.get<bool>();
    r.per_type.push_back(o);
  }
  if (auto it = j.find("metadata"); it != j.end()) {
    const json& m = *it;
    expect_object(m, "/metadata", {"solver", "grid", "seed", "notes"});
    if (auto s = m.find("solver"); s != m.end()) {
      if (!s->is_string()) schema("/metadata/solver", "expected a string");
      r.metadata.solver = s->get<std::string>();
    }
    if (auto g = m.find("grid"); g != m.end() && !g->is_null()) {
      r.metadata.grid = grid_from(*g, "/metadata/grid");
    }
    if (auto s = m.find("seed"); s != m.end() && !s->is_null()) {
      if (!s->is_number_unsigned()) schema("/metadata/seed", "expected an unsigned integer");
      r.metadata.seed = s->get<std::uint64_t>();
    }
    if (auto n = m.find("notes"); n != m.end()) {
      if (!n->is_array()) schema("/metadata/notes", "expected an array");
      for (std::size_t i = 0; i < n->size(); ++i) {
        if (!(*n)[i].is_string()) {
          schema("/metadata/notes/" + std::to_string(i), "expected a string");
        }
        r.metadata.notes.push_back((*n)[i].get<std::string>());
      }
    }
  }
  return r;
}

json allocation_to_json(const MarketInstance& inst, double W,
                        const std::vector<Allocation>& alloc) {
  json rows = json::array();
  for (const Allocation& a : alloc) {
    rows.push_back({{"type", a.type}, {"x", a.x}, {"price", a.price}});
  }
  return json{{"bandwidth_cap", W},
              {"value", allocation_value(inst, alloc)},
              {"allocations", std::move(rows)}};
}

std::string encode(const MarketInstance& inst) { return dump(instance_to_json(inst)); }
std::string encode(const ContractMenu& menu) { return dump(menu_to_json(menu)); }
std::string encode(const EvalReport& report) { return dump(report_to_json(report)); }

MarketInstance decode_instance(std::string_view text) {
  return instance_from_json(parse(text));
}
ContractMenu decode_menu(std::string_view text) { return menu_from_json(parse(text)); }
EvalReport decode_report(std::string_view text) { return report_from_json(parse(text)); }

}  // namespace contracts
