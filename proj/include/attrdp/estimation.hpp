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
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/mechanism.hpp"
#include "attrdp/number_format.hpp"

namespace attrdp {

inline constexpr double kZ95 = 1.96;

struct FrequencyEstimate {
  // Unclamped inversion; may fall outside [0, 1] at small n or extreme pi.
  double raw_point = 0;
  double clamped_point = 0;
  double variance = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  std::size_t n = 0;
};

// Inverts Pr[y = 1] = pi p11 + (1 - pi) p01 for pi. The variance is the
// binomial variance of the observed proportion scaled by 1 / (p11 - p01)^2,
// and the interval is the normal approximation raw_point +- 1.96 sd
// (reasonable from n ~ 1000 upward).
inline FrequencyEstimate DebiasFrequency(double observed_lambda,
                                         const DesignMatrix& m,
                                         std::size_t n) {
  if (!(observed_lambda >= 0 && observed_lambda <= 1)) {
    throw InvalidArgumentError("observed proportion must lie in [0, 1], got " +
                               FormatDouble(observed_lambda));
  }
  if (n == 0) {
    throw InvalidArgumentError("record count must be at least 1");
  }
  const double gap = m.p11() - m.p01();
  if (gap == 0) {
    throw FailedPreconditionError(
        "design matrix is singular (p11 = p01, epsilon = 0); the population "
        "frequency cannot be recovered");
  }
  FrequencyEstimate est;
  est.n = n;
  est.raw_point = (observed_lambda - m.p01()) / gap;
  est.clamped_point = std::clamp(est.raw_point, 0.0, 1.0);
  est.variance = observed_lambda * (1 - observed_lambda) /
                 (static_cast<double>(n) * gap * gap);
  const double half_width = kZ95 * std::sqrt(est.variance);
  est.ci95_low = est.raw_point - half_width;
  est.ci95_high = est.raw_point + half_width;
  return est;
}

// Fraction of records whose bit for `name` differs between the two releases.
inline double FlipRate(const AttributeDatabase& original,
                       const AttributeDatabase& perturbed,
                       std::string_view name) {
  RequireAligned(original, perturbed);
  const std::size_t column = original.schema().IndexOrThrow(name);
  if (original.empty()) {
    throw FailedPreconditionError("flip rate of an empty database");
  }
  std::size_t flips = 0;
  for (std::size_t r = 0; r < original.size(); ++r) {
    flips += original.bit(r, column) != perturbed.bit(r, column);
  }
  return static_cast<double>(flips) / static_cast<double>(original.size());
}

struct UtilityRow {
  std::string attribute;
  double keep_rate = 0;
  double true_frequency = 0;
  FrequencyEstimate debiased_estimate;
  double absolute_error = 0;
};

// One row per configured attribute, in schema order. Utility is measured on
// the labels themselves: how often a label survives and how well the
// population frequency is recovered from the release.
inline std::vector<UtilityRow> UtilityReport(const AttributeDatabase& original,
                                             const AttributeDatabase& perturbed,
                                             const PerturbationConfig& config) {
  RequireAligned(original, perturbed);
  ValidateConfig(config, original.schema());
  std::vector<UtilityRow> rows;
  for (const std::string& name : original.schema().names()) {
    auto it = config.per_attribute.find(name);
    if (it == config.per_attribute.end()) continue;
    UtilityRow row;
    row.attribute = name;
    row.keep_rate = 1 - FlipRate(original, perturbed, name);
    row.true_frequency = Frequency(original, name);
    row.debiased_estimate =
        DebiasFrequency(Frequency(perturbed, name), it->second, original.size());
    row.absolute_error =
        std::abs(row.debiased_estimate.raw_point - row.true_frequency);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string UtilityReportToCsv(const std::vector<UtilityRow>& rows) {
  std::string out =
      "attribute,keep_rate,true_frequency,debiased_estimate,absolute_error\n";
  for (const UtilityRow& row : rows) {
    out += row.attribute;
    out += ',' + FormatDouble(row.keep_rate);
    out += ',' + FormatDouble(row.true_frequency);
    out += ',' + FormatDouble(row.debiased_estimate.raw_point);
    out += ',' + FormatDouble(row.absolute_error);
    out += '\n';
  }
  return out;
}

}  // namespace attrdp
