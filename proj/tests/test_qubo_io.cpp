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

#include <sstream>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qastat/qubo_io.hpp"

using namespace qastat;

namespace {

QuboModel parse(const std::string& text) {
    std::istringstream in(text);
    return parse_qubo(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("parse a small qubo file", "[io]") {
    const auto m = parse(
            "# two variables\n"
            "offset 1.5\n"
            "0 0 -1\n"
            "\n"
            "1 1 -1   # trailing comment\n"
            "0 1 3\n");
    REQUIRE(m.num_variables() == 2);
    CHECK(m.offset() == 1.5);
    CHECK(m.linear(0) == -1.0);
    CHECK(m.linear(1) == -1.0);
    CHECK(m.quadratic(0, 1) == 3.0);
}

TEST_CASE("variable count follows the largest index", "[io]") {
    const auto m = parse("0 4 2.0\n");
    CHECK(m.num_variables() == 5);
    CHECK(m.linear(3) == 0.0);
}

TEST_CASE("malformed lines report their line number", "[io]") {
    CHECK(error_line("0 0 1\n0 1 2\n0 0 3\n") == 3);
    CHECK(error_line("1 0 1\n") == 1);
    CHECK(error_line("0 0\n") == 1);
    CHECK(error_line("0 0 abc\n") == 1);
    CHECK(error_line("# c\n0 0 nan\n") == 2);
    CHECK(error_line("0 0 1\noffset 2\n") == 2);
    CHECK(error_line("-1 0 1\n") == 1);
}

TEST_CASE("write then parse round-trips exactly", "[io]") {
    std::mt19937_64 rng(3);
    const auto model = testing::random_qubo(7, rng, 0.5, -10.0, 10.0).model();
    std::stringstream buffer;
    write_qubo(buffer, model);
    CHECK(parse_qubo(buffer) == model);
}

TEST_CASE("missing file is a parse failure", "[io]") {
    CHECK_THROWS_AS(read_qubo_file("/nonexistent/qastat/model.qubo"), ParseError);
}
