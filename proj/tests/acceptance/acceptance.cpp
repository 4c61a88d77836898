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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "attrdp/attrdp.hpp"
#include "attrdp_cli.hpp"
#include "test_util.hpp"

namespace attrdp::acceptance {
namespace {

using ::attrdp::testing::ExactColumn;
using ::attrdp::testing::RandomDatabase;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  // Zero means no runtime bound.
  double max_seconds;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

// 1. epsilon over p_w in {0.6, 0.7, 0.8, 0.9} is {ln 1.5, ln 7/3, ln 4, ln 9}
//    within 1e-9, and epsilon(0.1) = epsilon(0.9) = ln 9.
Outcome BudgetTable() {
  const double pws[] = {0.6, 0.7, 0.8, 0.9};
  const double expected[] = {std::log(1.5), std::log(7.0 / 3.0), std::log(4.0),
                             std::log(9.0)};
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(EpsilonOfWarner(WarnerParameter(pws[i]))
                                         .value() -
                                     expected[i]));
  }
  const double e01 = EpsilonOfWarner(WarnerParameter(0.1)).value();
  const double e09 = EpsilonOfWarner(WarnerParameter(0.9)).value();
  worst = std::max({worst, std::abs(e01 - std::log(9.0)),
                    std::abs(e09 - std::log(9.0))});
  return {worst <= 1e-9, "max |error| = " + Fmt("%.3g", worst)};
}

// 2. OptimalMatrix(eps) satisfies DP exactly at eps, and its diagonal strictly
//    exceeds q / (1 + q) for 50 sampled q in (1, e^eps).
Outcome OptimalMatrixDominance() {
  std::mt19937_64 rng(2);
  int checked = 0;
  bool ok = true;
  for (double eps : {0.1, 0.5, 1.0, 2.0, std::log(9.0)}) {
    const DesignMatrix best = OptimalMatrix(PrivacyBudget(eps));
    ok &= SatisfiesDp(best, PrivacyBudget(eps));
    ok &= std::abs(EpsilonOfMatrix(best).value() - eps) <= 1e-9;
    ok &= !SatisfiesDp(best, PrivacyBudget(eps * (1 - 1e-6)));
    std::uniform_real_distribution<double> u(1, std::exp(eps));
    int sampled = 0;
    while (sampled < 50) {
      const double q = u(rng);
      if (!(q > 1 && q < std::exp(eps))) continue;
      ok &= q / (1 + q) < best.p00();
      ++sampled;
      ++checked;
    }
  }
  return {ok, std::to_string(checked) + " (eps, q) pairs checked"};
}

// 3. n = 100,000, Warner p_w = 0.8, one seed: keep rate within 0.8 +- 0.004.
Outcome MechanismStatistics() {
  constexpr std::size_t kN = 100000;
  const AttributeDatabase db = RandomDatabase(kN, {"A"}, {0.5}, 3);
  PerturbationConfig config;
  config.master_seed = 20260101;
  config.per_attribute.emplace("A", WarnerMatrix(WarnerParameter(0.8)));
  const double keep =
      1 - FlipRate(db, PerturbDatabase(db, config), "A");
  return {std::abs(keep - 0.8) <= 0.004, "keep rate = " + Fmt("%.5f", keep)};
}

// 4. pi = 0.3, p_w = 0.7, n = 10,000, 200 trials: mean within +-0.005 of 0.3,
//    empirical variance within a factor 1.5 of the analytic variance.
Outcome EstimatorUnbiasedness() {
  constexpr std::size_t kN = 10000;
  constexpr int kTrials = 200;
  const AttributeDatabase db = ExactColumn(kN, 3000);
  const DesignMatrix m = WarnerMatrix(WarnerParameter(0.7));
  std::vector<double> estimates;
  for (int t = 0; t < kTrials; ++t) {
    PerturbationConfig config;
    config.master_seed = 4000 + t;
    config.per_attribute.emplace("A", m);
    estimates.push_back(
        DebiasFrequency(Frequency(PerturbDatabase(db, config), "A"), m, kN)
            .raw_point);
  }
  double mean = 0;
  for (double e : estimates) mean += e;
  mean /= kTrials;
  double var = 0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= kTrials - 1;
  const double lambda = 0.3 * m.p11() + 0.7 * m.p01();
  const double analytic = DebiasFrequency(lambda, m, kN).variance;
  const double ratio = var / analytic;
  const bool ok = std::abs(mean - 0.3) <= 0.005 && ratio <= 1.5 &&
                  ratio >= 1 / 1.5;
  return {ok, "mean = " + Fmt("%.5f", mean) +
                  ", var ratio = " + Fmt("%.3f", ratio)};
}

// 5. p_w = 0.9, n = 200,000, balanced strata: passes at slack 0.15 with
//    empirical epsilon within 0.1 of ln 9. A release from
//    [[0.999, 0.001], [0.5, 0.5]] audited against ln 2 fails.
Outcome AuditSoundness() {
  constexpr std::size_t kN = 200000;
  const AttributeDatabase db = ExactColumn(kN, kN / 2);
  PerturbationConfig warner;
  warner.master_seed = 5;
  warner.per_attribute.emplace("A", WarnerMatrix(WarnerParameter(0.9)));
  const AuditReport good =
      Audit(db, PerturbDatabase(db, warner), warner, 0.15);
  const double eps = good.attributes.at(0).empirical_epsilon;

  PerturbationConfig leaky;
  leaky.master_seed = 5;
  leaky.per_attribute.emplace("A", DesignMatrix(0.999, 0.001, 0.5, 0.5));
  PerturbationConfig claimed;
  claimed.per_attribute.emplace("A", OptimalMatrix(PrivacyBudget(std::log(2.0))));
  const AuditReport bad =
      Audit(db, PerturbDatabase(db, leaky), claimed, 0.15);

  const bool ok = good.overall == Verdict::kPass &&
                  std::abs(eps - std::log(9.0)) <= 0.1 &&
                  bad.overall == Verdict::kFail;
  return {ok, "warner eps = " + Fmt("%.4f", eps) + " (" +
                  VerdictName(good.overall) + "), leaky eps = " +
                  Fmt("%.3f", bad.attributes.at(0).empirical_epsilon) + " (" +
                  VerdictName(bad.overall) + ")"};
}

// 6. `perturb --seed 42` twice yields byte-identical CSV, ledger, manifest.
Outcome Determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("attrdp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const AttributeDatabase db = RandomDatabase(
      5000, {"Bangs", "Blond_Hair", "Male", "Pale_Skin", "Young"},
      {0.15, 0.15, 0.42, 0.04, 0.78}, 6);
  cli::WriteFile(dir / "db.csv", WriteCsv(db));
  cli::WriteFile(dir / "config.json",
                 R"({"attributes": {"Bangs": {"warner_pw": 0.9},
                     "Blond_Hair": {"warner_pw": 0.8}, "Male": {"epsilon": 1},
                     "Pale_Skin": {"p00": 0.85, "p01": 0.15, "p10": 0.2, "p11": 0.8},
                     "Young": {"warner_pw": 0.6}}})");
  std::ostringstream out, err;
  bool ok = true;
  for (const char* run : {"run1", "run2"}) {
    ok &= cli::RunCli({"perturb", "--db", (dir / "db.csv").string(),
                       "--config", (dir / "config.json").string(), "--seed",
                       "42", "--out-dir", (dir / run).string()},
                      out, err) == cli::kExitOk;
  }
  int identical = 0;
  if (ok) {
    for (const char* file :
         {"perturbed.csv", "ledger.json", "manifest.jsonl"}) {
      const std::string a = cli::ReadFile((dir / "run1" / file).string());
      const std::string b = cli::ReadFile((dir / "run2" / file).string());
      if (!a.empty() && a == b) ++identical;
    }
  }
  fs::remove_all(dir);
  return {ok && identical == 3,
          std::to_string(identical) + "/3 artifacts byte-identical" +
              (err.str().empty() ? "" : ", stderr: " + err.str())};
}

const char* const kCelebaNames[40] = {
    "5_o_Clock_Shadow", "Arched_Eyebrows",     "Attractive",
    "Bags_Under_Eyes",  "Bald",                "Bangs",
    "Big_Lips",         "Big_Nose",            "Black_Hair",
    "Blond_Hair",       "Blurry",              "Brown_Hair",
    "Bushy_Eyebrows",   "Chubby",              "Double_Chin",
    "Eyeglasses",       "Goatee",              "Gray_Hair",
    "Heavy_Makeup",     "High_Cheekbones",     "Male",
    "Mouth_Slightly_Open", "Mustache",         "Narrow_Eyes",
    "No_Beard",         "Oval_Face",           "Pale_Skin",
    "Pointy_Nose",      "Receding_Hairline",   "Rosy_Cheeks",
    "Sideburns",        "Smiling",             "Straight_Hair",
    "Wavy_Hair",        "Wearing_Earrings",    "Wearing_Hat",
    "Wearing_Lipstick", "Wearing_Necklace",    "Wearing_Necktie",
    "Young"};

std::string SyntheticCeleba(std::size_t rows, std::mt19937_64& rng) {
  std::string text = std::to_string(rows) + "\n";
  for (const char* name : kCelebaNames) text += std::string(name) + " ";
  text += "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    char id[16];
    std::snprintf(id, sizeof(id), "%06zu.jpg", r + 1);
    text += id;
    for (int a = 0; a < 40; ++a) text += (rng() & 1) ? "  1" : " -1";
    text += "\n";
  }
  return text;
}

// 7. CSV round trip over 1,000 random databases; CelebA parser accepts a
//    synthetic 40-attribute file and rejects every malformed variant.
Outcome FormatRoundTrips() {
  std::mt19937_64 rng(7);
  int round_trips = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t arity = 1 + rng() % 40;
    const std::size_t n = rng() % 50;
    std::vector<std::string> names;
    std::vector<double> pis;
    for (std::size_t a = 0; a < arity; ++a) {
      names.push_back("attr_" + std::to_string(a));
      pis.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
    }
    const AttributeDatabase db = RandomDatabase(n, names, pis, rng());
    round_trips += ParseCsv(WriteCsv(db)) == db;
  }

  const std::string good = SyntheticCeleba(25, rng);
  bool accepted = false;
  try {
    const AttributeDatabase db = ParseCelebaAttributes(good);
    accepted = db.size() == 25 && db.schema().size() == 40 &&
               ParseCsv(WriteCsv(db)) == db;
  } catch (const Error&) {
  }

  const std::string header = good.substr(0, good.find('\n') + 1);
  const std::string rest = good.substr(header.size());
  const std::string names_line = rest.substr(0, rest.find('\n') + 1);
  const std::string body = rest.substr(names_line.size());
  const std::string first_row = body.substr(0, body.find('\n') + 1);
  struct Variant {
    std::string text;
    ParseErrorKind kind;
  };
  std::string bad_token = good;
  bad_token.replace(bad_token.rfind(" -1"), 3, "  0");
  std::string short_row = good;
  short_row.replace(short_row.rfind(" -1\n") != std::string::npos
                        ? short_row.rfind(" -1\n")
                        : short_row.rfind("  1\n"),
                    4, "\n");
  const std::vector<Variant> variants = {
      {"26\n" + names_line + body, ParseErrorKind::kCountMismatch},
      {"24\n" + names_line + body, ParseErrorKind::kCountMismatch},
      {short_row, ParseErrorKind::kArityMismatch},
      {bad_token, ParseErrorKind::kBadToken},
      {"26\n" + names_line + body + first_row, ParseErrorKind::kDuplicateId},
      {header + "\n" + body, ParseErrorKind::kEmptyHeader},
  };
  int rejected = 0;
  for (const Variant& v : variants) {
    try {
      ParseCelebaAttributes(v.text);
    } catch (const ParseError& e) {
      rejected += e.kind() == v.kind;
    }
  }
  const bool ok = round_trips == 1000 && accepted &&
                  rejected == static_cast<int>(variants.size());
  return {ok, std::to_string(round_trips) + "/1000 round trips, 40-attr file " +
                  (accepted ? "accepted" : "REJECTED") + ", " +
                  std::to_string(rejected) + "/" +
                  std::to_string(variants.size()) +
                  " malformed variants rejected"};
}

// 8. Stand-in for the classifier-based results: keep rate rises and
//    estimation error falls with p_w in the default sweep (trials = 10,
//    n = 10,000).
Outcome SweepTrends() {
  const AttributeDatabase db = RandomDatabase(
      10000, {"Bangs", "Blond_Hair", "Male", "Pale_Skin", "Young"},
      {0.15, 0.15, 0.42, 0.04, 0.78}, 8);
  SweepOptions options;
  options.trials = 10;
  options.seed = 8;
  const std::vector<SweepRow> rows = RunSweep(db, options);
  bool keep_up = true, error_down = true;
  std::string detail = "keep/error:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += " " + Fmt("%.3f", MeanKeepRate(rows[i])) + "/" +
              Fmt("%.4f", MeanEstimationError(rows[i]));
    if (i == 0) continue;
    keep_up &= MeanKeepRate(rows[i]) > MeanKeepRate(rows[i - 1]);
    error_down &= MeanEstimationError(rows[i]) < MeanEstimationError(rows[i - 1]);
  }
  return {rows.size() == 4 && keep_up && error_down, detail};
}

}  // namespace
}  // namespace attrdp::acceptance

int main() {
  using namespace attrdp::acceptance;
  const std::vector<Criterion> criteria = {
      {1, "budget table reproduction", 0, BudgetTable},
      {2, "optimal matrix dominance", 0, OptimalMatrixDominance},
      {3, "mechanism keep-rate statistics", 1.0, MechanismStatistics},
      {4, "estimator unbiasedness", 10.0, EstimatorUnbiasedness},
      {5, "audit soundness", 5.0, AuditSoundness},
      {6, "perturb determinism", 0, Determinism},
      {7, "format round trips", 0, FormatRoundTrips},
      {8, "sweep utility trends", 0, SweepTrends},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    bool pass = outcome.pass;
    std::string timing = Fmt("%.3f s", seconds);
    if (c.max_seconds > 0) {
      timing += " / limit " + Fmt("%.0f s", c.max_seconds);
      pass &= seconds < c.max_seconds;
    }
    failures += !pass;
    std::printf("[%s] AC%d %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), outcome.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
