// Copyright 2026 The Labov Toolkit Authors.
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

#ifndef LABOV_ERRORS_H_
#define LABOV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace labov {

// Malformed input file or document. line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A value violates a schema invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric has no defined value on its input (e.g. alpha with no variation).
class UndefinedMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace labov

#endif  // LABOV_ERRORS_H_
