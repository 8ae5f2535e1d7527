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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qastat/model.hpp"

namespace qastat::detail {

/// CSR view of a quadratic model used by the sampling kernels. Each
/// interaction appears in both endpoint rows.
struct CompactModel {
    Vartype vartype = Vartype::Binary;
    std::size_t num_variables = 0;
    std::vector<double> linear;
    double offset = 0.0;
    std::vector<std::size_t> row_start;  // size num_variables + 1
    std::vector<std::size_t> neighbor;
    std::vector<double> weight;
    /// For each stored interaction (in model key order), its two CSR slots.
    std::vector<std::pair<std::size_t, std::size_t>> edge_slots;

    template <Vartype V>
    static CompactModel from(const QuadraticModel<V>& model) {
        CompactModel compact;
        compact.vartype = V;
        compact.num_variables = model.num_variables();
        compact.linear = model.linear_biases();
        compact.offset = model.offset();

        const std::size_t n = compact.num_variables;
        std::vector<std::size_t> degree(n, 0);
        for (const auto& [edge, bias] : model.quadratic_biases()) {
            ++degree[edge.first];
            ++degree[edge.second];
        }
        compact.row_start.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) compact.row_start[i + 1] = compact.row_start[i] + degree[i];
        compact.neighbor.resize(compact.row_start[n]);
        compact.weight.resize(compact.row_start[n]);

        std::vector<std::size_t> cursor(compact.row_start.begin(), compact.row_start.end() - 1);
        for (const auto& [edge, bias] : model.quadratic_biases()) {
            const std::size_t a = cursor[edge.first]++;
            const std::size_t b = cursor[edge.second]++;
            compact.neighbor[a] = edge.second;
            compact.weight[a] = bias;
            compact.neighbor[b] = edge.first;
            compact.weight[b] = bias;
            compact.edge_slots.emplace_back(a, b);
        }
        return compact;
    }

    /// Sum of |coefficient| over every term, used to scale tie tolerances.
    double magnitude() const {
        double total = 0.0;
        for (double a : linear) total += std::abs(a);
        for (const auto& slots : edge_slots) total += std::abs(weight[slots.first]);
        return total;
    }

    double field(std::size_t i, const std::vector<std::int8_t>& state) const {
        double f = linear[i];
        for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) {
            f += weight[k] * state[neighbor[k]];
        }
        return f;
    }

    double energy(const std::vector<std::int8_t>& state) const {
        double total = offset;
        for (std::size_t i = 0; i < num_variables; ++i) total += linear[i] * state[i];
        for (const auto& slots : edge_slots) {
            // edge_slots.first lives in the row of the lower endpoint
            const std::size_t j = neighbor[slots.first];
            const std::size_t i = neighbor[slots.second];
            total += weight[slots.first] * state[i] * state[j];
        }
        return total;
    }
};

}  // namespace qastat::detail
