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
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "attrdp/errors.hpp"
#include "attrdp/number_format.hpp"

namespace attrdp {

// Flags and CSV headers use underscores where attribute names are usually
// written with spaces ("Blond Hair" -> "Blond_Hair").
inline std::string NormalizeAttributeName(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

// Ordered, non-empty list of unique attribute identifiers.
class AttributeSchema {
 public:
  explicit AttributeSchema(std::vector<std::string> names)
      : names_(std::move(names)) {
    if (names_.empty()) {
      throw InvalidArgumentError("attribute schema must not be empty");
    }
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const std::string& name = names_[i];
      if (name.empty()) {
        throw InvalidArgumentError("attribute name must not be empty");
      }
      for (char c : name) {
        if (c == ',' || c == '"' || c == ' ' || c == '\t' || c == '\n' ||
            c == '\r') {
          throw InvalidArgumentError("attribute name '" + name +
                                     "' contains a separator character");
        }
      }
      if (!index_.emplace(name, i).second) {
        throw InvalidArgumentError("duplicate attribute name '" + name + "'");
      }
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  std::optional<std::size_t> IndexOf(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t IndexOrThrow(std::string_view name) const {
    auto index = IndexOf(name);
    if (!index) {
      throw NotFoundError("unknown attribute '" + std::string(name) + "'");
    }
    return *index;
  }

  bool Contains(std::string_view name) const { return IndexOf(name).has_value(); }

  friend bool operator==(const AttributeSchema& a, const AttributeSchema& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct AttributeRecord {
  std::string record_id;
  // One bit per schema attribute, 0 = absent, 1 = present.
  std::vector<std::uint8_t> values;

  friend bool operator==(const AttributeRecord&,
                         const AttributeRecord&) = default;
};

// Immutable after construction. Record order is the order the records were
// supplied in; perturbation draws are keyed by that index.
class AttributeDatabase {
 public:
  AttributeDatabase(AttributeSchema schema,
                    std::vector<AttributeRecord> records)
      : schema_(std::move(schema)), records_(std::move(records)) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(records_.size());
    for (const AttributeRecord& record : records_) {
      if (record.record_id.empty()) {
        throw InvalidArgumentError("record id must not be empty");
      }
      if (record.record_id.find_first_of("\r\n") != std::string::npos) {
        throw InvalidArgumentError("record id contains a line break");
      }
      if (record.values.size() != schema_.size()) {
        throw InvalidArgumentError(
            "record '" + record.record_id + "' has " +
            std::to_string(record.values.size()) + " values, schema has " +
            std::to_string(schema_.size()));
      }
      for (std::uint8_t v : record.values) {
        if (v > 1) {
          throw InvalidArgumentError("record '" + record.record_id +
                                     "' has a non-binary value");
        }
      }
      if (!seen.insert(record.record_id).second) {
        throw InvalidArgumentError("duplicate record id '" +
                                   record.record_id + "'");
      }
    }
  }

  const AttributeSchema& schema() const { return schema_; }
  const std::vector<AttributeRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::uint8_t bit(std::size_t record, std::size_t attribute) const {
    return records_[record].values[attribute];
  }

  friend bool operator==(const AttributeDatabase& a,
                         const AttributeDatabase& b) {
    return a.schema_ == b.schema_ && a.records_ == b.records_;
  }

 private:
  AttributeSchema schema_;
  std::vector<AttributeRecord> records_;
};

namespace internal {

// Reads one line, dropping a trailing '\r'. Returns false at EOF.
inline bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

inline std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace internal

// Reads the CelebA annotation layout:
//   line 1       record count N
//   line 2       whitespace-separated attribute names
//   lines 3..    record id followed by one token in {-1, 1} per attribute
// Tokens may be separated by any run of spaces or tabs. -1 maps to bit 0 and
// 1 to bit 1. Blank lines after the name line are ignored.
inline AttributeDatabase ParseCelebaAttributes(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;

  if (!internal::ReadLine(source, line)) {
    throw ParseError(ParseErrorKind::kMalformed, 1, "missing record count");
  }
  ++line_no;
  auto count_tokens = internal::SplitWhitespace(line);
  std::optional<std::size_t> declared;
  if (count_tokens.size() == 1) {
    declared = ParseInteger<std::size_t>(count_tokens[0]);
  }
  if (!declared) {
    throw ParseError(ParseErrorKind::kMalformed, line_no,
                     "expected a decimal record count, got '" + line + "'");
  }

  if (!internal::ReadLine(source, line)) {
    throw ParseError(ParseErrorKind::kEmptyHeader, 2,
                     "missing attribute name line");
  }
  ++line_no;
  auto name_tokens = internal::SplitWhitespace(line);
  if (name_tokens.empty()) {
    throw ParseError(ParseErrorKind::kEmptyHeader, line_no,
                     "attribute name line is empty");
  }
  std::vector<std::string> names(name_tokens.begin(), name_tokens.end());
  std::optional<AttributeSchema> schema;
  try {
    schema.emplace(std::move(names));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(ParseErrorKind::kMalformed, line_no, e.what());
  }
  const std::size_t arity = schema->size();

  std::vector<AttributeRecord> records;
  records.reserve(std::min<std::size_t>(*declared, 1u << 20));
  std::unordered_set<std::string> ids;
  while (internal::ReadLine(source, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    if (records.size() == *declared) {
      throw ParseError(ParseErrorKind::kCountMismatch, line_no,
                       "declared " + std::to_string(*declared) +
                           " records but found more rows");
    }
    auto tokens = internal::SplitWhitespace(line);
    if (tokens.size() != arity + 1) {
      throw ParseError(ParseErrorKind::kArityMismatch, line_no,
                       "expected " + std::to_string(arity) +
                           " attribute values, got " +
                           std::to_string(tokens.size() - 1));
    }
    AttributeRecord record;
    record.record_id = std::string(tokens[0]);
    record.values.reserve(arity);
    for (std::size_t a = 0; a < arity; ++a) {
      std::string_view token = tokens[a + 1];
      if (token == "1") {
        record.values.push_back(1);
      } else if (token == "-1") {
        record.values.push_back(0);
      } else {
        throw ParseError(ParseErrorKind::kBadToken, line_no,
                         "value '" + std::string(token) + "' for attribute " +
                             schema->names()[a] + " is not -1 or 1");
      }
    }
    if (!ids.insert(record.record_id).second) {
      throw ParseError(ParseErrorKind::kDuplicateId, line_no,
                       "record id '" + record.record_id + "' repeats");
    }
    records.push_back(std::move(record));
  }
  if (records.size() != *declared) {
    throw ParseError(ParseErrorKind::kCountMismatch, 0,
                     "declared " + std::to_string(*declared) +
                         " records but found " +
                         std::to_string(records.size()));
  }
  return AttributeDatabase(std::move(*schema), std::move(records));
}

inline AttributeDatabase ParseCelebaAttributes(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseCelebaAttributes(in);
}

// CSV dialect: comma separated, no quoting, header "record_id,<names...>",
// cells 0 or 1. Spaces in header names are normalized to underscores.
inline AttributeDatabase ParseCsv(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!internal::ReadLine(source, line)) {
    throw ParseError(ParseErrorKind::kEmptyHeader, 1, "missing CSV header");
  }
  ++line_no;
  auto header = internal::SplitCommas(line);
  if (header.front() != "record_id") {
    throw ParseError(ParseErrorKind::kMalformed, line_no,
                     "first header cell must be 'record_id'");
  }
  if (header.size() < 2) {
    throw ParseError(ParseErrorKind::kEmptyHeader, line_no,
                     "CSV header names no attributes");
  }
  std::vector<std::string> names;
  names.reserve(header.size() - 1);
  for (std::size_t i = 1; i < header.size(); ++i) {
    names.push_back(NormalizeAttributeName(header[i]));
  }
  std::optional<AttributeSchema> schema;
  try {
    schema.emplace(std::move(names));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(ParseErrorKind::kMalformed, line_no, e.what());
  }
  const std::size_t arity = schema->size();

  std::vector<AttributeRecord> records;
  std::unordered_set<std::string> ids;
  while (internal::ReadLine(source, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = internal::SplitCommas(line);
    if (cells.size() != arity + 1) {
      throw ParseError(ParseErrorKind::kArityMismatch, line_no,
                       "expected " + std::to_string(arity + 1) +
                           " cells, got " + std::to_string(cells.size()));
    }
    AttributeRecord record;
    record.record_id = std::string(cells[0]);
    if (record.record_id.empty()) {
      throw ParseError(ParseErrorKind::kMalformed, line_no,
                       "empty record id");
    }
    record.values.reserve(arity);
    for (std::size_t a = 0; a < arity; ++a) {
      std::string_view cell = cells[a + 1];
      if (cell == "0") {
        record.values.push_back(0);
      } else if (cell == "1") {
        record.values.push_back(1);
      } else {
        throw ParseError(ParseErrorKind::kBadToken, line_no,
                         "cell '" + std::string(cell) + "' for attribute " +
                             schema->names()[a] + " is not 0 or 1");
      }
    }
    if (!ids.insert(record.record_id).second) {
      throw ParseError(ParseErrorKind::kDuplicateId, line_no,
                       "record id '" + record.record_id + "' repeats");
    }
    records.push_back(std::move(record));
  }
  return AttributeDatabase(std::move(*schema), std::move(records));
}

inline AttributeDatabase ParseCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseCsv(in);
}

// Emits the dialect ParseCsv reads. Every row, header included, ends in '\n'.
inline std::string WriteCsv(const AttributeDatabase& db) {
  std::string out = "record_id";
  for (const std::string& name : db.schema().names()) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (const AttributeRecord& record : db.records()) {
    if (record.record_id.find(',') != std::string::npos) {
      throw InvalidArgumentError("record id '" + record.record_id +
                                 "' contains a comma and cannot be written "
                                 "as CSV");
    }
    out += record.record_id;
    for (std::uint8_t v : record.values) {
      out += ',';
      out += static_cast<char>('0' + v);
    }
    out += '\n';
  }
  return out;
}

// Projects onto `names`, in that order. Record ids and order are unchanged.
inline AttributeDatabase SelectAttributes(const AttributeDatabase& db,
                                          const std::vector<std::string>& names) {
  std::vector<std::size_t> columns;
  columns.reserve(names.size());
  for (const std::string& name : names) {
    columns.push_back(db.schema().IndexOrThrow(name));
  }
  AttributeSchema schema(names);
  std::vector<AttributeRecord> records;
  records.reserve(db.size());
  for (const AttributeRecord& record : db.records()) {
    AttributeRecord projected{record.record_id, {}};
    projected.values.reserve(columns.size());
    for (std::size_t c : columns) projected.values.push_back(record.values[c]);
    records.push_back(std::move(projected));
  }
  return AttributeDatabase(std::move(schema), std::move(records));
}

inline std::size_t CountOnes(const AttributeDatabase& db,
                             std::size_t attribute) {
  std::size_t ones = 0;
  for (const AttributeRecord& record : db.records()) {
    ones += record.values[attribute];
  }
  return ones;
}

// Fraction of records whose bit for `name` is 1.
inline double Frequency(const AttributeDatabase& db, std::string_view name) {
  const std::size_t column = db.schema().IndexOrThrow(name);
  if (db.empty()) {
    throw FailedPreconditionError("frequency of an empty database");
  }
  return static_cast<double>(CountOnes(db, column)) /
         static_cast<double>(db.size());
}

// Throws unless both databases share a schema and list the same record ids
// in the same order.
inline void RequireAligned(const AttributeDatabase& original,
                           const AttributeDatabase& perturbed) {
  if (!(original.schema() == perturbed.schema())) {
    throw FailedPreconditionError("databases have different schemas");
  }
  if (original.size() != perturbed.size()) {
    throw FailedPreconditionError(
        "databases have different record counts (" +
        std::to_string(original.size()) + " vs " +
        std::to_string(perturbed.size()) + ")");
  }
  for (std::size_t r = 0; r < original.size(); ++r) {
    if (original.records()[r].record_id != perturbed.records()[r].record_id) {
      throw FailedPreconditionError(
          "record " + std::to_string(r) + " differs: '" +
          original.records()[r].record_id + "' vs '" +
          perturbed.records()[r].record_id + "'");
    }
  }
}

}  // namespace attrdp
