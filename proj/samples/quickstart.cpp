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

// Builds a small synthetic attribute database, releases it under Warner's
// mechanism, and prints the budget, a debiased frequency, and an audit.

#include <cstdio>
#include <string>
#include <vector>

#include "attrdp/attrdp.hpp"

int main() {
  using namespace attrdp;

  constexpr std::size_t kRecords = 50000;
  std::vector<AttributeRecord> records;
  for (std::size_t r = 0; r < kRecords; ++r) {
    // About 30% of records carry the attribute.
    const std::uint8_t bit = UniformDraw(7, r, 0) < 0.3 ? 1 : 0;
    records.push_back({"img" + std::to_string(r) + ".jpg", {bit}});
  }
  const AttributeDatabase db(AttributeSchema({"Male"}), std::move(records));

  PerturbationConfig config;
  config.master_seed = 42;
  config.per_attribute.emplace("Male", WarnerMatrix(WarnerParameter(0.8)));

  const AttributeDatabase released = PerturbDatabase(db, config);
  const BudgetLedger ledger = LedgerOf(config);
  std::printf("epsilon_w(Male) = %.6f\n", ledger.entries.at("Male").value());

  const FrequencyEstimate est = DebiasFrequency(
      Frequency(released, "Male"), config.per_attribute.at("Male"), db.size());
  std::printf("true frequency  = %.4f\n", Frequency(db, "Male"));
  std::printf("released        = %.4f\n", Frequency(released, "Male"));
  std::printf("debiased        = %.4f  [%.4f, %.4f]\n", est.raw_point,
              est.ci95_low, est.ci95_high);

  const AuditReport report = Audit(db, released, config, kDefaultAuditSlack);
  std::printf("audit: empirical epsilon %.4f, verdict %s\n",
              report.attributes.front().empirical_epsilon,
              VerdictName(report.overall));
  return 0;
}
