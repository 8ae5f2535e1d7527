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

#include "qastat/model.hpp"

#include <algorithm>
#include <cmath>

namespace qastat {

void HardwareRange::validate() const {
    if (!(h_min < 0.0 && 0.0 < h_max)) {
        throw InvalidArgument("hardware range requires h_min < 0 < h_max");
    }
    if (!(j_min < 0.0 && 0.0 <= j_max)) {
        throw InvalidArgument("hardware range requires j_min < 0 <= j_max");
    }
}

IsingModel qubo_to_ising(const QuboModel& model) {
    IsingModel ising(model.num_variables(), model.offset());
    double offset = model.offset();
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        const double a = model.linear(i);
        ising.add_linear(i, a / 2.0);
        offset += a / 2.0;
    }
    for (const auto& [edge, b] : model.quadratic_biases()) {
        ising.set_quadratic(edge.first, edge.second, b / 4.0);
        ising.add_linear(edge.first, b / 4.0);
        ising.add_linear(edge.second, b / 4.0);
        offset += b / 4.0;
    }
    ising.set_offset(offset);
    return ising;
}

QuboModel ising_to_qubo(const IsingModel& model) {
    QuboModel qubo(model.num_variables());
    double offset = model.offset();
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        const double h = model.linear(i);
        qubo.add_linear(i, 2.0 * h);
        offset -= h;
    }
    for (const auto& [edge, j] : model.quadratic_biases()) {
        qubo.set_quadratic(edge.first, edge.second, 4.0 * j);
        qubo.add_linear(edge.first, -2.0 * j);
        qubo.add_linear(edge.second, -2.0 * j);
        offset += j;
    }
    qubo.set_offset(offset);
    return qubo;
}

std::vector<std::int8_t> bits_to_spins(std::span<const std::int8_t> bits) {
    for (std::int8_t b : bits) {
        if (b != 0 && b != 1) throw InvalidArgument("bit values must be 0 or 1");
    }
    std::vector<std::int8_t> spins(bits.size());
    std::transform(bits.begin(), bits.end(), spins.begin(),
                   [](std::int8_t b) { return static_cast<std::int8_t>(2 * b - 1); });
    return spins;
}

std::vector<std::int8_t> spins_to_bits(std::span<const std::int8_t> spins) {
    for (std::int8_t s : spins) {
        if (s != -1 && s != 1) throw InvalidArgument("spin values must be -1 or +1");
    }
    std::vector<std::int8_t> bits(spins.size());
    std::transform(spins.begin(), spins.end(), bits.begin(),
                   [](std::int8_t s) { return static_cast<std::int8_t>((s + 1) / 2); });
    return bits;
}

RescaledModel rescale_to_hardware(const IsingModel& model, const HardwareRange& range) {
    range.validate();
    const double h_limit = std::min(-range.h_min, range.h_max);
    double scale = 1.0;
    for (double h : model.linear_biases()) scale = std::max(scale, std::abs(h) / h_limit);
    for (const auto& [edge, j] : model.quadratic_biases()) {
        if (j > 0.0) {
            if (range.j_max == 0.0) {
                throw InvalidArgument("positive coupling cannot be represented with j_max = 0");
            }
            scale = std::max(scale, j / range.j_max);
        } else if (j < 0.0) {
            scale = std::max(scale, -j / -range.j_min);
        }
    }
    if (scale == 1.0) return {model, 1.0};

    IsingModel scaled(model.num_variables(), model.offset() / scale);
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        scaled.set_linear(i, model.linear(i) / scale);
    }
    for (const auto& [edge, j] : model.quadratic_biases()) {
        scaled.set_quadratic(edge.first, edge.second, j / scale);
    }
    return {std::move(scaled), scale};
}

std::vector<double> upper_triangular_matrix(const QuboModel& model) {
    const std::size_t n = model.num_variables();
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = model.linear(i);
    for (const auto& [edge, b] : model.quadratic_biases()) q[edge.first * n + edge.second] = b;
    return q;
}

}  // namespace qastat
