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
#include <cstdint>
#include <string>
#include <vector>

#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/estimation.hpp"
#include "attrdp/mechanism.hpp"
#include "attrdp/number_format.hpp"

namespace attrdp {

inline const std::vector<double>& DefaultSweepKeepProbabilities() {
  static const std::vector<double> kValues = {0.6, 0.7, 0.8, 0.9};
  return kValues;
}

// Two local attributes and three global ones.
inline const std::vector<std::string>& DefaultSweepAttributes() {
  static const std::vector<std::string> kNames = {
      "Bangs", "Blond_Hair", "Male", "Pale_Skin", "Young"};
  return kNames;
}

// The defaults that exist in `schema`, in default order.
inline std::vector<std::string> DefaultAttributesIn(
    const AttributeSchema& schema) {
  std::vector<std::string> present;
  for (const std::string& name : DefaultSweepAttributes()) {
    if (schema.Contains(name)) present.push_back(name);
  }
  return present;
}

struct AttributeSweepStat {
  std::string attribute;
  double keep_rate = 0;
  // Mean of |debiased raw estimate - true frequency| over trials.
  double estimation_error = 0;
};

struct SweepRow {
  double p_w = 0;
  double epsilon = 0;
  std::vector<AttributeSweepStat> per_attribute;
};

struct SweepOptions {
  std::vector<std::string> attributes;
  std::vector<double> keep_probabilities = DefaultSweepKeepProbabilities();
  std::size_t trials = 10;
  std::uint64_t seed = 0;
};

// For every p_w, perturbs the selected attributes with Warner's matrix under
// seeds seed, seed + 1, ..., seed + trials - 1 and averages keep rate and
// estimation error. Trial t uses the same seed for every p_w, so releases at
// different p_w share their uniform draws and keep sets are nested.
inline std::vector<SweepRow> RunSweep(const AttributeDatabase& db,
                                      const SweepOptions& options) {
  if (options.trials == 0) {
    throw InvalidArgumentError("sweep needs at least one trial");
  }
  if (db.empty()) {
    throw FailedPreconditionError("cannot sweep an empty database");
  }
  std::vector<std::string> attributes = options.attributes;
  if (attributes.empty()) attributes = DefaultAttributesIn(db.schema());
  if (attributes.empty()) {
    throw InvalidArgumentError(
        "none of the default sweep attributes are in the schema; name the "
        "attributes explicitly");
  }
  for (const std::string& name : attributes) db.schema().IndexOrThrow(name);

  // Validate every p_w before doing any work.
  std::vector<WarnerParameter> params;
  for (double p : options.keep_probabilities) params.emplace_back(p);

  std::vector<double> truth;
  for (const std::string& name : attributes) {
    truth.push_back(Frequency(db, name));
  }

  std::vector<SweepRow> rows;
  for (WarnerParameter param : params) {
    const DesignMatrix matrix = WarnerMatrix(param);
    SweepRow row;
    row.p_w = param.value();
    row.epsilon = EpsilonOfWarner(param).value();
    row.per_attribute.resize(attributes.size());
    for (std::size_t t = 0; t < options.trials; ++t) {
      PerturbationConfig config;
      config.master_seed = options.seed + t;
      for (const std::string& name : attributes) {
        config.per_attribute.insert_or_assign(name, matrix);
      }
      const AttributeDatabase released = PerturbDatabase(db, config);
      for (std::size_t i = 0; i < attributes.size(); ++i) {
        const std::string& name = attributes[i];
        const double keep = 1 - FlipRate(db, released, name);
        const FrequencyEstimate est =
            DebiasFrequency(Frequency(released, name), matrix, db.size());
        row.per_attribute[i].keep_rate += keep;
        row.per_attribute[i].estimation_error +=
            std::abs(est.raw_point - truth[i]);
      }
    }
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      row.per_attribute[i].attribute = attributes[i];
      row.per_attribute[i].keep_rate /= static_cast<double>(options.trials);
      row.per_attribute[i].estimation_error /=
          static_cast<double>(options.trials);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double MeanKeepRate(const SweepRow& row) {
  double sum = 0;
  for (const auto& s : row.per_attribute) sum += s.keep_rate;
  return sum / static_cast<double>(row.per_attribute.size());
}

inline double MeanEstimationError(const SweepRow& row) {
  double sum = 0;
  for (const auto& s : row.per_attribute) sum += s.estimation_error;
  return sum / static_cast<double>(row.per_attribute.size());
}

// Columns: p_w, epsilon, mean_keep_rate, mean_estimation_error, then
// <attribute>_keep_rate and <attribute>_estimation_error per attribute.
inline std::string SweepToCsv(const std::vector<SweepRow>& rows) {
  std::string out = "p_w,epsilon,mean_keep_rate,mean_estimation_error";
  if (!rows.empty()) {
    for (const auto& s : rows.front().per_attribute) {
      out += ',' + s.attribute + "_keep_rate";
      out += ',' + s.attribute + "_estimation_error";
    }
  }
  out += '\n';
  for (const SweepRow& row : rows) {
    out += FormatDouble(row.p_w);
    out += ',' + FormatDouble(row.epsilon);
    out += ',' + FormatDouble(MeanKeepRate(row));
    out += ',' + FormatDouble(MeanEstimationError(row));
    for (const auto& s : row.per_attribute) {
      out += ',' + FormatDouble(s.keep_rate);
      out += ',' + FormatDouble(s.estimation_error);
    }
    out += '\n';
  }
  return out;
}

}  // namespace attrdp
