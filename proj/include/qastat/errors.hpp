// Copyright 2026 The qastat Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qastat {

/// Input violates a documented precondition (bad index, convention
/// mismatch, non-finite coefficient, malformed shape).
class InvalidArgument : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Problem exceeds what a backend can handle (e.g. exhaustive enumeration
/// beyond its variable limit).
class CapacityError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// No valid minor embedding was found within the restart budget.
class EmbeddingError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
    ParseError(const std::string& message, std::size_t line)
            : std::runtime_error(line == 0 ? message
                                           : "line " + std::to_string(line) + ": " + message),
              line_(line) {}

    std::size_t line() const noexcept { return line_; }

 private:
    std::size_t line_;
};

}  // namespace qastat
