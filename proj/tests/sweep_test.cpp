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

#include "attrdp/sweep.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace attrdp {
namespace {

using ::attrdp::testing::RandomDatabase;

AttributeDatabase FiveAttributeDb(std::size_t n) {
  return RandomDatabase(n, {"Bangs", "Blond_Hair", "Male", "Pale_Skin",
                            "Smiling", "Young"},
                        {0.15, 0.15, 0.42, 0.04, 0.48, 0.78}, 404);
}

TEST(SweepTest, DefaultEpsilonColumn) {
  const auto rows = RunSweep(FiveAttributeDb(2000), SweepOptions{});
  ASSERT_EQ(rows.size(), 4u);
  const double expected[] = {std::log(1.5), std::log(7.0 / 3.0),
                             std::log(4.0), std::log(9.0)};
  const double approx[] = {0.4055, 0.8473, 1.3863, 2.1972};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(rows[i].epsilon, expected[i], 1e-9);
    EXPECT_NEAR(rows[i].epsilon, approx[i], 1e-4);
    EXPECT_NEAR(rows[i].epsilon,
                std::abs(std::log(rows[i].p_w / (1 - rows[i].p_w))), 1e-12);
  }
  // Default attributes only, in default order; Smiling is not among them.
  ASSERT_EQ(rows[0].per_attribute.size(), 5u);
  EXPECT_EQ(rows[0].per_attribute[0].attribute, "Bangs");
  EXPECT_EQ(rows[0].per_attribute[4].attribute, "Young");
}

TEST(SweepTest, KeepRateMonotoneInKeepProbability) {
  SweepOptions options;
  options.trials = 10;
  options.seed = 1;
  const auto rows = RunSweep(FiveAttributeDb(10000), options);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(MeanKeepRate(rows[i]), MeanKeepRate(rows[i - 1]));
    for (std::size_t a = 0; a < rows[i].per_attribute.size(); ++a) {
      EXPECT_GT(rows[i].per_attribute[a].keep_rate,
                rows[i - 1].per_attribute[a].keep_rate);
    }
  }
}

TEST(SweepTest, SinglePointNine) {
  SweepOptions options;
  options.keep_probabilities = {0.9};
  options.attributes = {"Male"};
  options.trials = 3;
  const auto rows = RunSweep(FiveAttributeDb(1000), options);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].epsilon, std::log(9.0), 1e-12);
  ASSERT_EQ(rows[0].per_attribute.size(), 1u);
}

TEST(SweepTest, Errors) {
  const AttributeDatabase db = FiveAttributeDb(100);
  SweepOptions bad_pw;
  bad_pw.keep_probabilities = {0.6, 1.2};
  EXPECT_THROW(RunSweep(db, bad_pw), InvalidArgumentError);
  bad_pw.keep_probabilities = {0.5};
  EXPECT_THROW(RunSweep(db, bad_pw), InvalidArgumentError);
  SweepOptions zero_trials;
  zero_trials.trials = 0;
  EXPECT_THROW(RunSweep(db, zero_trials), InvalidArgumentError);
  SweepOptions unknown;
  unknown.attributes = {"Nope"};
  EXPECT_THROW(RunSweep(db, unknown), NotFoundError);
  const AttributeDatabase no_defaults =
      RandomDatabase(10, {"X"}, {0.5}, 1);
  EXPECT_THROW(RunSweep(no_defaults, SweepOptions{}), InvalidArgumentError);
}

TEST(SweepTest, DeterministicCsv) {
  SweepOptions options;
  options.trials = 2;
  options.seed = 9;
  const AttributeDatabase db = FiveAttributeDb(500);
  const std::string csv = SweepToCsv(RunSweep(db, options));
  EXPECT_EQ(csv, SweepToCsv(RunSweep(db, options)));
  EXPECT_EQ(csv.rfind("p_w,epsilon,mean_keep_rate,mean_estimation_error,"
                      "Bangs_keep_rate,Bangs_estimation_error,",
                      0),
            0u);
  EXPECT_NE(csv.find("\n0.6,"), std::string::npos);
  EXPECT_NE(csv.find("\n0.9,"), std::string::npos);
}

}  // namespace
}  // namespace attrdp
