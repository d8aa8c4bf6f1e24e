// Copyright 2026 The cliffvqd Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliffvqd {

/// Bad arguments: size mismatches, out-of-range indices, malformed configs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string &what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// Same error with `prefix` (e.g. a file name) prepended; keeps the line number.
  ParseError(const std::string &prefix, const ParseError &inner)
      : std::runtime_error(prefix + inner.what()), line_(inner.line_) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (tableau invariant, oracle mismatch).
class ValidationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cliffvqd
