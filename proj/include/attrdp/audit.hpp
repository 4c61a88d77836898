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

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/mechanism.hpp"

namespace attrdp {

inline constexpr double kDefaultAuditSlack = 0.15;

// Plug-in estimate of the four conditionals p_uv. Unlike DesignMatrix the
// entries may be exactly 0 or 1.
struct ConditionalEstimate {
  double p00 = 0;
  double p01 = 0;
  double p10 = 0;
  double p11 = 0;
};

// Joint counts of (true bit, released bit) for one attribute.
struct EmpiricalMatrix {
  std::size_t n00 = 0;
  std::size_t n01 = 0;
  std::size_t n10 = 0;
  std::size_t n11 = 0;

  std::size_t stratum0() const { return n00 + n01; }
  std::size_t stratum1() const { return n10 + n11; }
  bool has_empty_stratum() const { return stratum0() == 0 || stratum1() == 0; }

  // nullopt when a stratum is empty and its row cannot be estimated.
  std::optional<ConditionalEstimate> Estimate() const {
    if (has_empty_stratum()) return std::nullopt;
    const double s0 = static_cast<double>(stratum0());
    const double s1 = static_cast<double>(stratum1());
    return ConditionalEstimate{static_cast<double>(n00) / s0,
                               static_cast<double>(n01) / s0,
                               static_cast<double>(n10) / s1,
                               static_cast<double>(n11) / s1};
  }
};

inline EmpiricalMatrix EmpiricalDesignMatrix(const AttributeDatabase& original,
                                             const AttributeDatabase& perturbed,
                                             std::string_view name) {
  RequireAligned(original, perturbed);
  const std::size_t column = original.schema().IndexOrThrow(name);
  EmpiricalMatrix counts;
  for (std::size_t r = 0; r < original.size(); ++r) {
    const int x = original.bit(r, column);
    const int y = perturbed.bit(r, column);
    if (x == 0) {
      (y == 0 ? counts.n00 : counts.n01)++;
    } else {
      (y == 0 ? counts.n10 : counts.n11)++;
    }
  }
  return counts;
}

// Same ratio bound as EpsilonOfMatrix; +inf when any cell is zero.
inline double EmpiricalEpsilon(const ConditionalEstimate& m) {
  return internal::LogRatioBound(m.p00, m.p01, m.p10, m.p11);
}

enum class Verdict { kPass, kFail, kInconclusive };

inline const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct AttributeAudit {
  std::string attribute;
  EmpiricalMatrix counts;
  std::optional<ConditionalEstimate> empirical_matrix;
  // +inf for a zero cell, NaN when inconclusive.
  double empirical_epsilon = std::numeric_limits<double>::quiet_NaN();
  PrivacyBudget target_epsilon;
  Verdict verdict = Verdict::kInconclusive;
};

struct AuditReport {
  std::vector<AttributeAudit> attributes;
  double slack = kDefaultAuditSlack;
  // kFail if any attribute fails, else kInconclusive if any is inconclusive,
  // else kPass.
  Verdict overall = Verdict::kPass;
};

// Checks, per configured attribute, that the realized design matrix satisfies
// the configured budget: pass iff empirical epsilon <= target + slack. An
// empty stratum is inconclusive and never passes.
inline AuditReport Audit(const AttributeDatabase& original,
                         const AttributeDatabase& perturbed,
                         const PerturbationConfig& config, double slack) {
  if (!(slack >= 0) || !std::isfinite(slack)) {
    throw InvalidArgumentError("audit slack must be finite and >= 0");
  }
  RequireAligned(original, perturbed);
  ValidateConfig(config, original.schema());

  AuditReport report;
  report.slack = slack;
  bool any_fail = false;
  bool any_inconclusive = false;
  for (const std::string& name : original.schema().names()) {
    auto it = config.per_attribute.find(name);
    if (it == config.per_attribute.end()) continue;
    AttributeAudit entry;
    entry.attribute = name;
    entry.target_epsilon = EpsilonOfMatrix(it->second);
    entry.counts = EmpiricalDesignMatrix(original, perturbed, name);
    entry.empirical_matrix = entry.counts.Estimate();
    if (!entry.empirical_matrix) {
      entry.verdict = Verdict::kInconclusive;
      any_inconclusive = true;
    } else {
      entry.empirical_epsilon = EmpiricalEpsilon(*entry.empirical_matrix);
      const bool ok =
          entry.empirical_epsilon <= entry.target_epsilon.value() + slack;
      entry.verdict = ok ? Verdict::kPass : Verdict::kFail;
      any_fail |= !ok;
    }
    report.attributes.push_back(std::move(entry));
  }
  report.overall = any_fail           ? Verdict::kFail
                   : any_inconclusive ? Verdict::kInconclusive
                                      : Verdict::kPass;
  return report;
}

namespace internal {

inline nlohmann::ordered_json EpsilonJson(double eps) {
  if (std::isnan(eps)) return nullptr;
  if (std::isinf(eps)) return "inf";
  return eps;
}

}  // namespace internal

// Every count is included so each verdict can be recomputed from the report.
// Infinite epsilons are written as the string "inf", undefined ones as null.
inline nlohmann::ordered_json AuditReportToJson(const AuditReport& report) {
  nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
  for (const AttributeAudit& a : report.attributes) {
    nlohmann::ordered_json entry;
    entry["counts"] = {{"n00", a.counts.n00},
                       {"n01", a.counts.n01},
                       {"n10", a.counts.n10},
                       {"n11", a.counts.n11}};
    entry["stratum_counts"] = {{"x0", a.counts.stratum0()},
                               {"x1", a.counts.stratum1()}};
    if (a.empirical_matrix) {
      const ConditionalEstimate& m = *a.empirical_matrix;
      entry["empirical_matrix"] = {{m.p00, m.p01}, {m.p10, m.p11}};
    } else {
      entry["empirical_matrix"] = nullptr;
    }
    entry["empirical_epsilon"] = internal::EpsilonJson(a.empirical_epsilon);
    entry["target_epsilon"] = a.target_epsilon.value();
    entry["verdict"] = VerdictName(a.verdict);
    attrs[a.attribute] = std::move(entry);
  }
  nlohmann::ordered_json doc;
  doc["slack"] = report.slack;
  doc["overall"] = VerdictName(report.overall);
  doc["attributes"] = std::move(attrs);
  return doc;
}

}  // namespace attrdp
