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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace attrdp {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a type invariant (probability out of range, p_w = 1/2, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// An attribute or record that was asked for does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Inputs are individually valid but cannot be combined (misaligned
// databases, empty database, singular design matrix).
class FailedPreconditionError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kCountMismatch,
  kArityMismatch,
  kBadToken,
  kDuplicateId,
  kEmptyHeader,
  kMalformed,
};

inline const char* ParseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kCountMismatch:
      return "count mismatch";
    case ParseErrorKind::kArityMismatch:
      return "arity mismatch";
    case ParseErrorKind::kBadToken:
      return "bad token";
    case ParseErrorKind::kDuplicateId:
      return "duplicate record id";
    case ParseErrorKind::kEmptyHeader:
      return "empty header";
    case ParseErrorKind::kMalformed:
      return "malformed input";
  }
  return "unknown";
}

// Raised by the text-format readers. `line()` is 1-based; 0 means the error
// is not tied to a single line (e.g. a record count mismatch at EOF).
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : Error(Format(kind, line, detail)), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(ParseErrorKind kind, std::size_t line,
                            const std::string& detail) {
    std::string out = ParseErrorKindName(kind);
    if (line > 0) out += " at line " + std::to_string(line);
    out += ": " + detail;
    return out;
  }

  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace attrdp
