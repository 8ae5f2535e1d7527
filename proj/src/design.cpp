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

#include "qastat/design.hpp"

#include <algorithm>
#include <set>

namespace qastat {

QuboModel nqueens_qubo(std::size_t n, const NQueensWeights& weights) {
    if (n < 1) throw InvalidArgument("design size must be at least 1");
    const DesignGrid grid{n};
    QuboModel qubo(grid.num_cells());
    for (std::size_t i = 0; i < grid.num_cells(); ++i) {
        qubo.set_linear(i, weights.point);
        const auto ri = static_cast<long>(grid.row(i));
        const auto ci = static_cast<long>(grid.col(i));
        for (std::size_t j = i + 1; j < grid.num_cells(); ++j) {
            const auto rj = static_cast<long>(grid.row(j));
            const auto cj = static_cast<long>(grid.col(j));
            double b = 0.0;
            if (ri == rj) b += weights.row;
            if (ci == cj) b += weights.column;
            if (ri - ci == rj - cj) b += weights.diagonal;
            if (ri + ci == rj + cj) b += weights.diagonal;
            if (b != 0.0) qubo.set_quadratic(i, j, b);
        }
    }
    return qubo;
}

Design decode_design(std::span<const std::int8_t> bits, const DesignGrid& grid) {
    if (bits.size() != grid.num_cells()) {
        throw InvalidArgument("assignment has " + std::to_string(bits.size()) +
                              " values for a grid of " + std::to_string(grid.num_cells()) +
                              " cells");
    }
    Design design;
    design.size = grid.size;
    std::vector<std::size_t> per_row(grid.size, 0);
    std::vector<std::size_t> per_col(grid.size, 0);
    std::set<long> forward;
    std::set<long> backward;
    bool diagonal_clash = false;
    for (std::size_t cell = 0; cell < bits.size(); ++cell) {
        if (bits[cell] != 1) continue;
        const auto r = grid.row(cell);
        const auto c = grid.col(cell);
        design.points.emplace_back(r, c);
        ++per_row[r];
        ++per_col[c];
        const auto rl = static_cast<long>(r);
        const auto cl = static_cast<long>(c);
        diagonal_clash |= !forward.insert(rl - cl).second;
        diagonal_clash |= !backward.insert(rl + cl).second;
    }
    auto exactly_one = [](const std::vector<std::size_t>& counts) {
        return !counts.empty() &&
               std::all_of(counts.begin(), counts.end(), [](std::size_t k) { return k == 1; });
    };
    design.row_latin = exactly_one(per_row);
    design.column_latin = exactly_one(per_col);
    design.diagonal_free = !design.points.empty() && !diagonal_clash;
    return design;
}

DesignRun generate_design(std::size_t n, const SamplerConfig& sampler,
                          const std::optional<DesignEmbedding>& hardware,
                          const NQueensWeights& weights) {
    const QuboModel qubo = nqueens_qubo(n, weights);
    DesignRun run;
    if (hardware) {
        auto embedded =
                sample_embedded(qubo, sampler, hardware->topology, hardware->options, hardware->unembed);
        run.samples = std::move(embedded.logical_samples);
        run.embedding = std::move(embedded.embedding);
    } else {
        run.samples = sample(sampler, qubo);
    }
    if (run.samples.empty()) {
        // every read was discarded for broken chains
        run.design.size = n;
        return run;
    }
    run.design = decode_design(run.samples.lowest().assignment, DesignGrid{n});
    return run;
}

}  // namespace qastat
