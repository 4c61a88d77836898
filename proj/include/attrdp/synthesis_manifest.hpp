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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <istream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "attrdp/accounting.hpp"
#include "attrdp/attribute_db.hpp"
#include "attrdp/errors.hpp"

namespace attrdp {

// Fixed default stamp so repeated runs produce byte-identical manifests.
inline constexpr const char* kEpochTimestamp = "1970-01-01T00:00:00Z";

inline bool IsRfc3339(std::string_view stamp) {
  static const std::regex pattern(
      R"(\d{4}-\d{2}-\d{2}[Tt]\d{2}:\d{2}:\d{2}(\.\d+)?([Zz]|[+-]\d{2}:\d{2}))");
  return std::regex_match(stamp.begin(), stamp.end(), pattern);
}

inline std::string CurrentRfc3339Utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

struct ManifestHeader {
  std::vector<std::string> schema;
  BudgetLedger ledger;
  std::uint64_t seed = 0;
  std::string created_at = kEpochTimestamp;
};

// Bits are kept as plain ints so a loaded manifest can carry (and a consumer
// can report) values that are not binary.
struct ManifestRow {
  std::string record_id;
  std::vector<int> bits;
  // 0 -> -1, 1 -> 1.
  std::vector<int> signed_bits;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

struct SynthesisManifest {
  ManifestHeader header;
  std::vector<ManifestRow> rows;
};

inline int SignedBit(int bit) { return bit == 0 ? -1 : 1; }

// Binds every record id of the perturbed release to its bit vector. No
// randomness is applied here; the bits are copied verbatim.
inline SynthesisManifest EmitManifest(const AttributeDatabase& perturbed,
                                      const BudgetLedger& ledger,
                                      std::string created_at = kEpochTimestamp) {
  for (const auto& [name, eps] : ledger.entries) {
    if (!perturbed.schema().Contains(name)) {
      throw InvalidArgumentError("ledger names attribute '" + name +
                                 "' missing from the database schema");
    }
  }
  if (!IsRfc3339(created_at)) {
    throw InvalidArgumentError("created_at '" + created_at +
                               "' is not an RFC 3339 timestamp");
  }
  SynthesisManifest manifest;
  manifest.header.schema = perturbed.schema().names();
  manifest.header.ledger = ledger;
  manifest.header.seed = ledger.seed;
  manifest.header.created_at = std::move(created_at);
  manifest.rows.reserve(perturbed.size());
  for (const AttributeRecord& record : perturbed.records()) {
    ManifestRow row;
    row.record_id = record.record_id;
    row.bits.assign(record.values.begin(), record.values.end());
    row.signed_bits.reserve(row.bits.size());
    for (int b : row.bits) row.signed_bits.push_back(SignedBit(b));
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

// JSON lines: the header object first, then one object per row with keys
// record_id, bits, signed (in that order).
inline std::string WriteManifest(const SynthesisManifest& manifest) {
  nlohmann::ordered_json header;
  header["schema"] = manifest.header.schema;
  header["ledger"] = LedgerToJson(manifest.header.ledger);
  header["seed"] = manifest.header.seed;
  header["created_at"] = manifest.header.created_at;
  std::string out = header.dump();
  out += '\n';
  for (const ManifestRow& row : manifest.rows) {
    nlohmann::ordered_json line;
    line["record_id"] = row.record_id;
    line["bits"] = row.bits;
    line["signed"] = row.signed_bits;
    out += line.dump();
    out += '\n';
  }
  return out;
}

inline SynthesisManifest LoadManifest(std::istream& in) {
  SynthesisManifest manifest;
  std::string line;
  std::size_t line_no = 0;
  auto parse_line = [&]() {
    try {
      return nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(ParseErrorKind::kMalformed, line_no, e.what());
    }
  };

  if (!internal::ReadLine(in, line)) {
    throw ParseError(ParseErrorKind::kEmptyHeader, 1,
                     "manifest has no header line");
  }
  ++line_no;
  const nlohmann::json header = parse_line();
  try {
    manifest.header.schema =
        header.at("schema").get<std::vector<std::string>>();
    manifest.header.ledger = LedgerFromJson(header.at("ledger"));
    manifest.header.seed = header.at("seed").get<std::uint64_t>();
    manifest.header.created_at = header.at("created_at").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseErrorKind::kMalformed, line_no,
                     std::string("bad manifest header: ") + e.what());
  } catch (const InvalidArgumentError& e) {
    throw ParseError(ParseErrorKind::kMalformed, line_no, e.what());
  }

  while (internal::ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const nlohmann::json row = parse_line();
    try {
      manifest.rows.push_back(
          ManifestRow{row.at("record_id").get<std::string>(),
                      row.at("bits").get<std::vector<int>>(),
                      row.at("signed").get<std::vector<int>>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ParseErrorKind::kMalformed, line_no,
                       std::string("bad manifest row: ") + e.what());
    }
  }
  return manifest;
}

inline SynthesisManifest LoadManifest(std::string_view text) {
  std::istringstream in{std::string(text)};
  return LoadManifest(in);
}

struct SynthesisAck {
  std::string record_id;
  std::vector<int> bits;
  bool ok = false;
  std::string diagnostic;
};

struct MockSynthesisSummary {
  std::size_t rows_ok = 0;
  std::size_t rows_failed = 0;
  std::vector<SynthesisAck> acks;
};

// Stand-in for the attribute-conditioned generator. It checks only the input
// contract: each row's bits are binary, match the schema arity, and agree
// with the signed encoding.
inline MockSynthesisSummary MockSynthesize(const SynthesisManifest& manifest) {
  MockSynthesisSummary summary;
  const std::size_t arity = manifest.header.schema.size();
  for (const ManifestRow& row : manifest.rows) {
    SynthesisAck ack{row.record_id, row.bits, true, ""};
    if (row.bits.size() != arity) {
      ack.ok = false;
      ack.diagnostic = "expected " + std::to_string(arity) + " bits, got " +
                       std::to_string(row.bits.size());
    } else if (row.signed_bits.size() != row.bits.size()) {
      ack.ok = false;
      ack.diagnostic = "signed encoding has " +
                       std::to_string(row.signed_bits.size()) +
                       " entries for " + std::to_string(row.bits.size()) +
                       " bits";
    } else {
      for (std::size_t i = 0; i < row.bits.size() && ack.ok; ++i) {
        const int bit = row.bits[i];
        if (bit != 0 && bit != 1) {
          ack.ok = false;
          ack.diagnostic = "bit " + std::to_string(i) + " (" +
                           manifest.header.schema[i] + ") is " +
                           std::to_string(bit) + ", not 0 or 1";
        } else if (row.signed_bits[i] != SignedBit(bit)) {
          ack.ok = false;
          ack.diagnostic = "signed value " + std::to_string(i) +
                           " does not match bit";
        }
      }
    }
    (ack.ok ? summary.rows_ok : summary.rows_failed)++;
    summary.acks.push_back(std::move(ack));
  }
  return summary;
}

}  // namespace attrdp
