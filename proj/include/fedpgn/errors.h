//
// Copyright 2026 The fedpgn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FEDPGN_ERRORS_H_
#define FEDPGN_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fedpgn {

// Invalid sizes, dimensions, or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced or received a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based; 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input whose values violate the expected schema.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& message, std::size_t line)
      : std::runtime_error(message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Binary file with wrong magic, version, or truncated payload.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fedpgn

#endif  // FEDPGN_ERRORS_H_
