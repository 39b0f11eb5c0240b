// Copyright 2026 The delp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <utility>

namespace delp {

// Every failure raised by the library derives from Error. The category
// decides the process exit code in the CLI.
enum class ErrorCategory { config, data, transport };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Malformed input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& msg)
      : Error(ErrorCategory::data, format(source, line, msg)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& msg) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + msg;
  }

  std::size_t line_;
};

// Structurally valid records that violate a cross-record invariant.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& msg) : Error(ErrorCategory::data, msg) {}
};

class LanguageError : public Error {
 public:
  explicit LanguageError(const std::string& msg) : Error(ErrorCategory::data, msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(ErrorCategory::data, msg) {}
};

// Payload rejected by a cue schema. Keeps the offending payload verbatim.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, std::string payload)
      : Error(ErrorCategory::data, msg), payload_(std::move(payload)) {}

  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(ErrorCategory::config, msg) {}
};

class TransportError : public Error {
 public:
  TransportError(const std::string& msg, bool retryable)
      : Error(ErrorCategory::transport, msg), retryable_(retryable) {}

  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

inline int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::transport: return 4;
  }
  return 1;
}

}  // namespace delp
