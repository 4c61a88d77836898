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

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit statuses:
//   0  success, or audit pass
//   1  usage, parse, or validation error
//   2  audit fail (or mock synthesis rejected a row)
//   3  audit inconclusive

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "attrdp/attrdp.hpp"

namespace attrdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAuditFail = 2;
inline constexpr int kExitAuditInconclusive = 3;

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline AttributeDatabase LoadDatabase(const std::string& path) {
  std::istringstream in(ReadFile(path));
  try {
    return ParseCsv(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

inline PerturbationConfig LoadConfig(const std::string& path) {
  return ParseConfig(ReadFile(path));
}

// Writes to `path`, or to `out` when the path is empty.
inline void Emit(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    WriteFile(path, content);
  }
}

inline int RunIngest(const std::string& input, const std::string& format,
                     const std::string& out_path, std::ostream& out) {
  std::istringstream in(ReadFile(input));
  std::optional<AttributeDatabase> db;
  try {
    db.emplace(format == "celeba" ? ParseCelebaAttributes(in) : ParseCsv(in));
  } catch (const ParseError& e) {
    throw Error(input + ": " + e.what());
  }
  WriteFile(out_path, WriteCsv(*db));
  out << "records: " << db->size() << "\n";
  out << "attributes: " << db->schema().size() << "\n";
  if (!db->empty()) {
    for (const std::string& name : db->schema().names()) {
      out << "  " << name << " " << FormatDouble(Frequency(*db, name)) << "\n";
    }
  }
  return kExitOk;
}

struct PerturbOutputs {
  std::string perturbed_csv;
  std::string ledger_json;
  std::string manifest_jsonl;
};

inline PerturbOutputs Perturb(const AttributeDatabase& db,
                              const PerturbationConfig& config,
                              const std::string& created_at,
                              unsigned threads) {
  ValidateConfig(config, db.schema());
  const AttributeDatabase released = PerturbDatabase(db, config, threads);
  const BudgetLedger ledger = LedgerOf(config);
  PerturbOutputs outputs;
  outputs.perturbed_csv = WriteCsv(released);
  outputs.ledger_json = LedgerToJson(ledger).dump(2) + "\n";
  outputs.manifest_jsonl =
      WriteManifest(EmitManifest(released, ledger, created_at));
  return outputs;
}

inline int RunPerturb(const std::string& db_path,
                      const std::string& config_path,
                      std::optional<std::uint64_t> seed,
                      const std::string& out_dir, std::string created_at,
                      unsigned threads, std::ostream& out) {
  const AttributeDatabase db = LoadDatabase(db_path);
  PerturbationConfig config = LoadConfig(config_path);
  if (seed) config.master_seed = *seed;
  if (created_at == "now") created_at = CurrentRfc3339Utc();
  // Everything is computed before the first file is written.
  const PerturbOutputs outputs = Perturb(db, config, created_at, threads);
  const std::filesystem::path dir(out_dir);
  WriteFile(dir / "perturbed.csv", outputs.perturbed_csv);
  WriteFile(dir / "ledger.json", outputs.ledger_json);
  WriteFile(dir / "manifest.jsonl", outputs.manifest_jsonl);
  const BudgetLedger ledger = LedgerOf(config);
  out << "seed: " << config.master_seed << "\n";
  for (const auto& [name, eps] : ledger.entries) {
    out << "  " << name << " epsilon_w " << FormatDouble(eps.value()) << "\n";
  }
  out << "total epsilon (" << kCompositionLabel
      << "): " << FormatDouble(ledger.total.value()) << "\n";
  return kExitOk;
}

inline int RunEstimate(const std::string& original_path,
                       const std::string& perturbed_path,
                       const std::string& config_path,
                       const std::string& out_path, std::ostream& out) {
  const AttributeDatabase original = LoadDatabase(original_path);
  const AttributeDatabase perturbed = LoadDatabase(perturbed_path);
  const PerturbationConfig config = LoadConfig(config_path);
  Emit(out_path,
       UtilityReportToCsv(UtilityReport(original, perturbed, config)), out);
  return kExitOk;
}

inline int RunAudit(const std::string& original_path,
                    const std::string& perturbed_path,
                    const std::string& config_path, double slack,
                    const std::string& out_path, std::ostream& out) {
  const AttributeDatabase original = LoadDatabase(original_path);
  const AttributeDatabase perturbed = LoadDatabase(perturbed_path);
  const PerturbationConfig config = LoadConfig(config_path);
  const AuditReport report = Audit(original, perturbed, config, slack);
  Emit(out_path, AuditReportToJson(report).dump(2) + "\n", out);
  switch (report.overall) {
    case Verdict::kPass:
      return kExitOk;
    case Verdict::kFail:
      return kExitAuditFail;
    case Verdict::kInconclusive:
      return kExitAuditInconclusive;
  }
  return kExitError;
}

inline int RunSweepCommand(const std::string& db_path,
                           const std::vector<std::string>& attributes,
                           const std::vector<double>& keep_probabilities,
                           std::size_t trials, std::uint64_t seed,
                           const std::string& out_path, std::ostream& out) {
  const AttributeDatabase db = LoadDatabase(db_path);
  SweepOptions options;
  for (const std::string& name : attributes) {
    options.attributes.push_back(NormalizeAttributeName(name));
  }
  if (!keep_probabilities.empty()) {
    options.keep_probabilities = keep_probabilities;
  }
  options.trials = trials;
  options.seed = seed;
  Emit(out_path, SweepToCsv(RunSweep(db, options)), out);
  return kExitOk;
}

inline int RunMockSynthesize(const std::string& manifest_path,
                             std::ostream& out) {
  std::istringstream in(ReadFile(manifest_path));
  const MockSynthesisSummary summary = MockSynthesize(LoadManifest(in));
  for (const SynthesisAck& ack : summary.acks) {
    if (!ack.ok) out << ack.record_id << ": " << ack.diagnostic << "\n";
  }
  out << "rows_ok: " << summary.rows_ok << "\n";
  out << "rows_failed: " << summary.rows_failed << "\n";
  return summary.rows_failed == 0 ? kExitOk : kExitAuditFail;
}

// `args` excludes the program name.
inline int RunCli(const std::vector<std::string>& args,
                  std::ostream& out = std::cout,
                  std::ostream& err = std::cerr) {
  CLI::App app{"Randomized-response privacy for binary attribute databases",
               "attrdp"};
  app.require_subcommand(1);

  std::string input, format = "celeba", out_path;
  auto* ingest = app.add_subcommand("ingest", "Normalize annotations to CSV");
  ingest->add_option("input", input, "Annotation file")->required();
  ingest->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"celeba", "csv"}));
  ingest->add_option("--out", out_path, "Output CSV")->required();

  std::string db_path, config_path, out_dir, created_at = kEpochTimestamp;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  auto* perturb =
      app.add_subcommand("perturb", "Release a perturbed database");
  perturb->add_option("--db", db_path, "Database CSV")->required();
  perturb->add_option("--config", config_path, "Perturbation config JSON")
      ->required();
  perturb->add_option("--seed", seed, "Master seed (overrides the config)");
  perturb->add_option("--out-dir", out_dir, "Output directory")->required();
  perturb->add_option("--created-at", created_at,
                      "RFC 3339 manifest timestamp, or 'now'");
  perturb->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  std::string original_path, perturbed_path;
  double slack = kDefaultAuditSlack;
  auto* estimate =
      app.add_subcommand("estimate", "Debiased frequencies and keep rates");
  auto* audit = app.add_subcommand("audit", "Empirical privacy audit");
  for (CLI::App* sub : {estimate, audit}) {
    sub->add_option("--original", original_path, "Original CSV")->required();
    sub->add_option("--perturbed", perturbed_path, "Perturbed CSV")
        ->required();
    sub->add_option("--config", config_path, "Perturbation config JSON")
        ->required();
    sub->add_option("--out", out_path, "Report path (default stdout)");
  }
  audit->add_option("--slack", slack, "Allowed epsilon excess")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> attributes;
  std::vector<double> keep_probabilities;
  std::size_t trials = 10;
  std::uint64_t sweep_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Privacy/utility sweep over p_w");
  sweep->add_option("--db", db_path, "Database CSV")->required();
  sweep->add_option("--attributes", attributes, "Attribute list")
      ->delimiter(',');
  sweep->add_option("--pw", keep_probabilities, "Keep probabilities")
      ->delimiter(',');
  sweep->add_option("--trials", trials, "Trials per p_w")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "Base seed");
  sweep->add_option("--out", out_path, "Sweep CSV (default stdout)");

  std::string manifest_path;
  auto* mock = app.add_subcommand("mock-synthesize",
                                  "Check a manifest's conditioning contract");
  mock->add_option("--manifest", manifest_path, "Manifest JSONL")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("attrdp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*ingest) return RunIngest(input, format, out_path, out);
    if (*perturb) {
      return RunPerturb(db_path, config_path, seed, out_dir, created_at,
                        threads, out);
    }
    if (*estimate) {
      return RunEstimate(original_path, perturbed_path, config_path, out_path,
                         out);
    }
    if (*audit) {
      return RunAudit(original_path, perturbed_path, config_path, slack,
                      out_path, out);
    }
    if (*sweep) {
      return RunSweepCommand(db_path, attributes, keep_probabilities, trials,
                             sweep_seed, out_path, out);
    }
    if (*mock) return RunMockSynthesize(manifest_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace attrdp::cli
