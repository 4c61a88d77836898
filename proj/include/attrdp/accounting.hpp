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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "attrdp/errors.hpp"
#include "attrdp/mechanism.hpp"

namespace attrdp {

// Label attached to the summed budget wherever it is reported. The sum is an
// upper bound from sequential composition over one record's attributes, not a
// tight dataset-level epsilon.
inline constexpr const char* kCompositionLabel =
    "sequential-composition upper bound";

// Sum of the budgets. The values are sorted before a compensated summation,
// so the result is bit-identical for every permutation of the input.
inline PrivacyBudget ComposeSequential(std::span<const PrivacyBudget> budgets) {
  std::vector<double> values;
  values.reserve(budgets.size());
  for (PrivacyBudget b : budgets) values.push_back(b.value());
  std::sort(values.begin(), values.end());
  double sum = 0;
  double compensation = 0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return PrivacyBudget(sum + compensation);
}

struct BudgetLedger {
  std::map<std::string, PrivacyBudget> entries;
  PrivacyBudget total;
  std::uint64_t seed = 0;
};

inline BudgetLedger LedgerOf(const PerturbationConfig& config) {
  BudgetLedger ledger;
  ledger.seed = config.master_seed;
  std::vector<PrivacyBudget> budgets;
  for (const auto& [name, matrix] : config.per_attribute) {
    PrivacyBudget eps = EpsilonOfMatrix(matrix);
    ledger.entries.emplace(name, eps);
    budgets.push_back(eps);
  }
  ledger.total = ComposeSequential(budgets);
  return ledger;
}

inline nlohmann::ordered_json LedgerToJson(const BudgetLedger& ledger) {
  nlohmann::ordered_json per_attribute = nlohmann::ordered_json::object();
  for (const auto& [name, eps] : ledger.entries) {
    per_attribute[name] = eps.value();
  }
  nlohmann::ordered_json doc;
  doc["seed"] = ledger.seed;
  doc["per_attribute"] = std::move(per_attribute);
  doc["total_epsilon"] = ledger.total.value();
  doc["composition"] = kCompositionLabel;
  return doc;
}

inline BudgetLedger LedgerFromJson(const nlohmann::json& doc) {
  try {
    BudgetLedger ledger;
    ledger.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& [name, eps] : doc.at("per_attribute").items()) {
      ledger.entries.emplace(name, PrivacyBudget(eps.get<double>()));
    }
    ledger.total = PrivacyBudget(doc.at("total_epsilon").get<double>());
    std::vector<PrivacyBudget> budgets;
    for (const auto& [name, eps] : ledger.entries) budgets.push_back(eps);
    if (std::abs(ComposeSequential(budgets).value() - ledger.total.value()) >
        1e-9) {
      throw InvalidArgumentError(
          "budget ledger total_epsilon does not match its entries");
    }
    return ledger;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgumentError(std::string("malformed budget ledger: ") +
                               e.what());
  }
}

}  // namespace attrdp
