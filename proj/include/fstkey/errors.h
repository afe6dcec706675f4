// Copyright 2026 The fstkey Authors.
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

#ifndef FSTKEY_ERRORS_H_
#define FSTKEY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fstkey {

// Inconsistent models, alphabets, or parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file content. Carries the offending line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Bad runtime input (touch events, frames, text).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fstkey

#endif  // FSTKEY_ERRORS_H_
