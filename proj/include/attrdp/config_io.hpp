// Copyright 2026 The attrdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/mechanism.hpp"

namespace attrdp {

// Reads a perturbation config:
//
//   {"master_seed": 42,
//    "attributes": {"Male":  {"p00": 0.9, "p01": 0.1, "p10": 0.2, "p11": 0.8},
//                   "Bangs": {"warner_pw": 0.7},
//                   "Young": {"epsilon": 1.0}}}
//
// "warner_pw" expands to the symmetric Warner matrix and "epsilon" to the
// optimal symmetric matrix for that budget. master_seed defaults to 0 when
// absent. Attribute names are normalized (spaces become underscores).
inline PerturbationConfig ConfigFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw InvalidArgumentError("perturbation config must be a JSON object");
  }
  PerturbationConfig config;
  if (auto it = doc.find("master_seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) {
      throw InvalidArgumentError("master_seed must be an unsigned integer");
    }
    config.master_seed = it->get<std::uint64_t>();
  }
  auto attrs = doc.find("attributes");
  if (attrs == doc.end()) return config;
  if (!attrs->is_object()) {
    throw InvalidArgumentError("'attributes' must be a JSON object");
  }
  for (const auto& [raw_name, fields] : attrs->items()) {
    const std::string name = NormalizeAttributeName(raw_name);
    if (!fields.is_object()) {
      throw InvalidArgumentError("config for '" + name +
                                 "' must be a JSON object");
    }
    auto number = [&](const char* key) {
      const auto& v = fields.at(key);
      if (!v.is_number()) {
        throw InvalidArgumentError(std::string(key) + " for '" + name +
                                   "' must be a number");
      }
      return v.get<double>();
    };
    const bool has_pw = fields.contains("warner_pw");
    const bool has_eps = fields.contains("epsilon");
    const bool has_full = fields.contains("p00") || fields.contains("p01") ||
                          fields.contains("p10") || fields.contains("p11");
    if (has_pw + has_eps + has_full != 1) {
      throw InvalidArgumentError(
          "config for '" + name +
          "' must give exactly one of warner_pw, epsilon, or p00..p11");
    }
    try {
      if (has_pw) {
        config.per_attribute.insert_or_assign(
            name, WarnerMatrix(WarnerParameter(number("warner_pw"))));
      } else if (has_eps) {
        config.per_attribute.insert_or_assign(
            name, OptimalMatrix(PrivacyBudget(number("epsilon"))));
      } else {
        config.per_attribute.insert_or_assign(
            name, DesignMatrix(number("p00"), number("p01"), number("p10"),
                               number("p11")));
      }
    } catch (const nlohmann::json::out_of_range&) {
      throw InvalidArgumentError("config for '" + name +
                                 "' must give all of p00, p01, p10, p11");
    } catch (const InvalidArgumentError& e) {
      throw InvalidArgumentError("config for '" + name + "': " + e.what());
    }
  }
  return config;
}

inline PerturbationConfig ParseConfig(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ParseErrorKind::kMalformed, 0,
                     std::string("config is not valid JSON: ") + e.what());
  }
  return ConfigFromJson(doc);
}

inline PerturbationConfig ParseConfig(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConfig(in);
}

inline nlohmann::ordered_json ConfigToJson(const PerturbationConfig& config) {
  nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
  for (const auto& [name, m] : config.per_attribute) {
    attrs[name] = {{"p00", m.p00()},
                   {"p01", m.p01()},
                   {"p10", m.p10()},
                   {"p11", m.p11()}};
  }
  nlohmann::ordered_json doc;
  doc["master_seed"] = config.master_seed;
  doc["attributes"] = std::move(attrs);
  return doc;
}

}  // namespace attrdp
