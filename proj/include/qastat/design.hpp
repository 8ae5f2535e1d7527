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
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qastat/chimera.hpp"
#include "qastat/embedding.hpp"
#include "qastat/model.hpp"
#include "qastat/samplers.hpp"

namespace qastat {

/// Row-major N x N grid: cell (row, col) is variable row * N + col, so
/// variable 0 is the top-left cell.
struct DesignGrid {
    std::size_t size = 0;

    std::size_t num_cells() const { return size * size; }
    std::size_t cell(std::size_t row, std::size_t col) const { return row * size + col; }
    std::size_t row(std::size_t cell) const { return cell / size; }
    std::size_t col(std::size_t cell) const { return cell % size; }
};

/// Coefficients of the N-queens energy. The defaults penalise sharing a row
/// or column twice as hard as sharing a diagonal.
struct NQueensWeights {
    double point = -2.0;
    double row = 2.0;
    double column = 2.0;
    double diagonal = 1.0;
};

QuboModel nqueens_qubo(std::size_t n, const NQueensWeights& weights = {});

/// Points of a decoded design plus computed validity flags:
/// row_latin / column_latin hold when every row / column carries exactly
/// one point; diagonal_free holds for a non-empty design with no two points
/// on a common diagonal.
struct Design {
    std::size_t size = 0;
    std::vector<std::pair<std::size_t, std::size_t>> points;  // (row, col), 0-based
    bool row_latin = false;
    bool column_latin = false;
    bool diagonal_free = false;

    bool valid() const { return row_latin && column_latin && diagonal_free; }
};

Design decode_design(std::span<const std::int8_t> bits, const DesignGrid& grid);

/// Optional hardware layer for generate_design.
struct DesignEmbedding {
    ChimeraGraph topology = chimera(16, 16, 4);
    EmbeddingOptions options;
    UnembedOptions unembed;
};

struct DesignRun {
    Design design;
    SampleSet samples;  // logical QUBO samples
    std::optional<Embedding> embedding;
};

/// Builds the N-queens QUBO, samples it (embedded when `hardware` is set),
/// and decodes the lowest-energy record.
DesignRun generate_design(std::size_t n, const SamplerConfig& sampler,
                          const std::optional<DesignEmbedding>& hardware = std::nullopt,
                          const NQueensWeights& weights = {});

}  // namespace qastat
