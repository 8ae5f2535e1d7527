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

#include <filesystem>
#include <iosfwd>

#include "qastat/model.hpp"

namespace qastat {

/// Reads the whitespace-separated `i j value` QUBO text format.
///
/// Indices are 0-based; `i == j` sets the linear term, `i < j` the
/// interaction. `#` starts a comment. An optional leading `offset <value>`
/// line sets the constant term. The variable count is one more than the
/// largest index seen. Duplicate keys and `i > j` lines are rejected with a
/// ParseError naming the line.
QuboModel parse_qubo(std::istream& in);
QuboModel read_qubo_file(const std::filesystem::path& path);

/// Writes every linear term (zeros included, so the variable count survives
/// a round trip) followed by the interactions in key order.
void write_qubo(std::ostream& out, const QuboModel& model);

}  // namespace qastat
