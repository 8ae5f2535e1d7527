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

#include "qastat/qubo_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qastat {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line.substr(0, line.find('#')));
    for (std::string token; stream >> token;) tokens.push_back(token);
    return tokens;
}

template <typename T>
T parse_number(const std::string& token, std::size_t line_number) {
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("cannot parse '" + token + "' as a number", line_number);
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw ParseError("non-finite value '" + token + "'", line_number);
    }
    return value;
}

}  // namespace

QuboModel parse_qubo(std::istream& in) {
    std::map<std::pair<std::size_t, std::size_t>, double> terms;
    double offset = 0.0;
    bool seen_term = false;
    bool seen_offset = false;
    std::size_t num_variables = 0;

    std::string line;
    for (std::size_t line_number = 1; std::getline(in, line); ++line_number) {
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (tokens[0] == "offset") {
            if (seen_term || seen_offset) {
                throw ParseError("offset must be the first entry and appear once", line_number);
            }
            if (tokens.size() != 2) throw ParseError("expected 'offset <value>'", line_number);
            offset = parse_number<double>(tokens[1], line_number);
            seen_offset = true;
            continue;
        }
        if (tokens.size() != 3) throw ParseError("expected 'i j value'", line_number);

        const auto i = parse_number<std::size_t>(tokens[0], line_number);
        const auto j = parse_number<std::size_t>(tokens[1], line_number);
        const auto value = parse_number<double>(tokens[2], line_number);
        if (i > j) {
            throw ParseError("interaction must be written with i <= j", line_number);
        }
        if (!terms.emplace(std::pair{i, j}, value).second) {
            throw ParseError("duplicate coefficient for (" + tokens[0] + ", " + tokens[1] + ")",
                             line_number);
        }
        num_variables = std::max(num_variables, j + 1);
        seen_term = true;
    }

    QuboModel model(num_variables, offset);
    for (const auto& [key, value] : terms) {
        if (key.first == key.second) {
            model.set_linear(key.first, value);
        } else {
            model.set_quadratic(key.first, key.second, value);
        }
    }
    return model;
}

QuboModel read_qubo_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return parse_qubo(in);
}

void write_qubo(std::ostream& out, const QuboModel& model) {
    const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
    if (model.offset() != 0.0) out << "offset " << model.offset() << '\n';
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        out << i << ' ' << i << ' ' << model.linear(i) << '\n';
    }
    for (const auto& [edge, bias] : model.quadratic_biases()) {
        out << edge.first << ' ' << edge.second << ' ' << bias << '\n';
    }
    out.precision(precision);
}

}  // namespace qastat
