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
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/number_format.hpp"
#include "attrdp/prf.hpp"

namespace attrdp {

// Absolute tolerance on design-matrix row sums.
inline constexpr double kRowSumTolerance = 1e-12;
// Multiplicative slack applied to every likelihood-ratio inequality.
inline constexpr double kRatioSlack = 1e-12;

// Non-negative, finite privacy budget in nats.
class PrivacyBudget {
 public:
  PrivacyBudget() = default;
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {
    if (!std::isfinite(epsilon) || epsilon < 0) {
      throw InvalidArgumentError("privacy budget must be finite and >= 0, got " +
                                 FormatDouble(epsilon));
    }
  }

  double value() const { return epsilon_; }

  friend bool operator==(PrivacyBudget, PrivacyBudget) = default;

 private:
  double epsilon_ = 0;
};

// Keep probability of Warner's mechanism: 0 < p_w < 1 and p_w != 1/2.
// p_w = 1/2 gives epsilon = 0 and a release that carries no information, so
// it is rejected rather than passed through.
class WarnerParameter {
 public:
  explicit WarnerParameter(double p_w) : p_w_(p_w) {
    if (!(p_w > 0 && p_w < 1)) {
      throw InvalidArgumentError("Warner p_w must lie in (0, 1), got " +
                                 FormatDouble(p_w));
    }
    if (p_w == 0.5) {
      throw InvalidArgumentError(
          "Warner p_w = 1/2 yields epsilon = 0; the release would carry no "
          "information");
    }
  }

  double value() const { return p_w_; }

 private:
  double p_w_;
};

// 2x2 row-stochastic matrix of p_uv = Pr[output v | true value u]. Rows are
// indexed by the true bit, columns by the released bit.
class DesignMatrix {
 public:
  DesignMatrix(double p00, double p01, double p10, double p11)
      : p_{p00, p01, p10, p11} {
    for (double p : p_) {
      if (!(p > 0 && p < 1)) {
        throw InvalidArgumentError(
            "design matrix entries must lie strictly inside (0, 1), got " +
            FormatDouble(p));
      }
    }
    if (std::abs(p00 + p01 - 1) > kRowSumTolerance ||
        std::abs(p10 + p11 - 1) > kRowSumTolerance) {
      throw InvalidArgumentError("design matrix rows must sum to 1");
    }
  }

  double p00() const { return p_[0]; }
  double p01() const { return p_[1]; }
  double p10() const { return p_[2]; }
  double p11() const { return p_[3]; }

  // Pr[output = v | input = u].
  double at(int u, int v) const { return p_[2 * u + v]; }

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  double p_[4];
};

namespace internal {

// Smallest epsilon for which all four ratio conditions
//   p00 <= e^eps p10,  p10 <= e^eps p00,  p11 <= e^eps p01,  p01 <= e^eps p11
// hold. Returns +inf when any entry is zero.
inline double LogRatioBound(double p00, double p01, double p10, double p11) {
  if (p00 <= 0 || p01 <= 0 || p10 <= 0 || p11 <= 0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(std::abs(std::log(p00 / p10)),
                  std::abs(std::log(p11 / p01)));
}

}  // namespace internal

inline DesignMatrix WarnerMatrix(WarnerParameter p) {
  const double keep = p.value();
  return DesignMatrix(keep, 1 - keep, 1 - keep, keep);
}

// |ln(p_w / (1 - p_w))|; symmetric under p_w -> 1 - p_w.
inline PrivacyBudget EpsilonOfWarner(WarnerParameter p) {
  const double keep = p.value();
  return PrivacyBudget(
      std::max(std::log((1 - keep) / keep), std::log(keep / (1 - keep))));
}

inline PrivacyBudget EpsilonOfMatrix(const DesignMatrix& m) {
  return PrivacyBudget(
      internal::LogRatioBound(m.p00(), m.p01(), m.p10(), m.p11()));
}

inline bool SatisfiesDp(const DesignMatrix& m, PrivacyBudget target) {
  const double bound = std::exp(target.value()) * (1 + kRatioSlack);
  return m.p00() <= bound * m.p10() && m.p10() <= bound * m.p00() &&
         m.p11() <= bound * m.p01() && m.p01() <= bound * m.p11();
}

// Symmetric matrix with diagonal e^eps / (e^eps + 1): the largest keep
// probability that still satisfies the target budget. Among the symmetric
// matrices with odds q = p_w / (1 - p_w) <= e^eps, the diagonal q / (1 + q)
// is strictly increasing in q, so the maximum sits at q = e^eps.
inline DesignMatrix OptimalMatrix(PrivacyBudget target) {
  const double eps = target.value();
  if (eps == 0) {
    throw InvalidArgumentError(
        "epsilon = 0 gives the degenerate all-1/2 matrix; no optimal "
        "mechanism exists");
  }
  const double keep = 1 / (1 + std::exp(-eps));
  const double flip = 1 / (1 + std::exp(eps));
  if (!(keep < 1) || !(flip > 0)) {
    throw InvalidArgumentError("epsilon " + FormatDouble(eps) +
                               " is too large for a representable matrix");
  }
  return DesignMatrix(keep, flip, flip, keep);
}

// Threshold sampling: for input u the output equals u iff draw < p_uu, so a
// uniform draw yields Pr[y = v | x = u] = p_uv.
inline std::uint8_t PerturbValue(std::uint8_t x, const DesignMatrix& m,
                                 double draw) {
  if (x == 0) return draw < m.p00() ? 0 : 1;
  return draw < m.p11() ? 1 : 0;
}

struct PerturbationConfig {
  std::uint64_t master_seed = 0;
  std::map<std::string, DesignMatrix> per_attribute;
};

inline void ValidateConfig(const PerturbationConfig& config,
                           const AttributeSchema& schema) {
  for (const auto& [name, matrix] : config.per_attribute) {
    if (!schema.Contains(name)) {
      throw NotFoundError("perturbation config names unknown attribute '" +
                          name + "'");
    }
  }
}

// Output bit (r, a) = PerturbValue(input bit, matrix(a),
// UniformDraw(master_seed, r, a)) where r is the record index and a the
// attribute's index in db's schema. Unconfigured attributes pass through.
// Each draw depends only on its own index, so the result is identical for
// any `threads` value.
inline AttributeDatabase PerturbDatabase(const AttributeDatabase& db,
                                         const PerturbationConfig& config,
                                         unsigned threads = 1) {
  ValidateConfig(config, db.schema());
  std::vector<std::pair<std::size_t, DesignMatrix>> columns;
  for (const auto& [name, matrix] : config.per_attribute) {
    columns.emplace_back(db.schema().IndexOrThrow(name), matrix);
  }
  std::vector<AttributeRecord> records = db.records();

  auto perturb_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      std::vector<std::uint8_t>& values = records[r].values;
      for (const auto& [a, matrix] : columns) {
        values[a] = PerturbValue(values[a], matrix,
                                 UniformDraw(config.master_seed, r, a));
      }
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || records.size() < 2 * threads) {
    perturb_range(0, records.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (records.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < records.size(); begin += chunk) {
      workers.emplace_back(perturb_range, begin,
                           std::min(begin + chunk, records.size()));
    }
  }
  return AttributeDatabase(db.schema(), std::move(records));
}

}  // namespace attrdp
