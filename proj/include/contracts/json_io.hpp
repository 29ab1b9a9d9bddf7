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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "contracts/market.hpp"
#include "contracts/types.hpp"

namespace contracts {

enum class DecodeErrorKind { kSyntax, kSchema, kValidation };

/// Failure to turn JSON text into a value. `path` is a JSON pointer to the
/// offending element ("" for the document root).
class DecodeError : public ValidationError {
 public:
  DecodeError(DecodeErrorKind kind, std::string path, const std::string& msg);

  DecodeErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  DecodeErrorKind kind_;
  std::string path_;
};

nlohmann::ordered_json instance_to_json(const MarketInstance& inst);
nlohmann::ordered_json menu_to_json(const ContractMenu& menu);
nlohmann::ordered_json report_to_json(const EvalReport& report);
nlohmann::ordered_json allocation_to_json(const MarketInstance& inst, double W,
                                  const std::vector<Allocation>& alloc);

/// Strict readers: unknown keys, wrong types and missing required keys are
/// schema errors. decode_instance also runs validate(); probabilities that
/// do not sum to one are reported, never rescaled.
MarketInstance instance_from_json(const nlohmann::ordered_json& j);
ContractMenu menu_from_json(const nlohmann::ordered_json& j);
EvalReport report_from_json(const nlohmann::ordered_json& j);

/// Text forms, two-space indented, newline terminated. Numbers keep full
/// double precision.
std::string encode(const MarketInstance& inst);
std::string encode(const ContractMenu& menu);
std::string encode(const EvalReport& report);

MarketInstance decode_instance(std::string_view text);
ContractMenu decode_menu(std::string_view text);
EvalReport decode_report(std::string_view text);

}  // namespace contracts
