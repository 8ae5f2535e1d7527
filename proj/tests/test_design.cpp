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

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qastat/design.hpp"

using namespace qastat;
using Catch::Approx;

namespace {

std::vector<std::int8_t> grid_bits(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& points) {
    std::vector<std::int8_t> bits(n * n, 0);
    for (const auto& [r, c] : points) bits[r * n + c] = 1;
    return bits;
}

/// Energy from the queen positions: -2 per queen, +2 per shared row or
/// column, +1 per shared diagonal.
double queens_energy(const std::vector<std::pair<std::size_t, std::size_t>>& points) {
    double e = -2.0 * static_cast<double>(points.size());
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            const long r1 = static_cast<long>(points[a].first), c1 = static_cast<long>(points[a].second);
            const long r2 = static_cast<long>(points[b].first), c2 = static_cast<long>(points[b].second);
            if (r1 == r2) e += 2.0;
            if (c1 == c2) e += 2.0;
            if (r1 - c1 == r2 - c2) e += 1.0;
            if (r1 + c1 == r2 + c2) e += 1.0;
        }
    }
    return e;
}

std::vector<std::pair<std::size_t, std::size_t>> points_of(std::uint64_t mask, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> points;
    for (std::size_t cell = 0; cell < n * n; ++cell) {
        if ((mask >> cell) & 1u) points.emplace_back(cell / n, cell % n);
    }
    return points;
}

}  // namespace

TEST_CASE("one-cell design", "[nqueens]") {
    const auto q = nqueens_qubo(1);
    CHECK(q.num_variables() == 1);
    CHECK(q.linear(0) == -2.0);
    CHECK(q.num_interactions() == 0);
    CHECK_THROWS_AS(nqueens_qubo(0), InvalidArgument);
}

TEST_CASE("four-by-four interaction count", "[nqueens]") {
    // 24 row pairs + 24 column pairs + 14 + 14 diagonal pairs
    const auto q = nqueens_qubo(4);
    CHECK(q.num_variables() == 16);
    CHECK(q.num_interactions() == 76);
}

TEST_CASE("qubo energy equals the attack count formula", "[nqueens]") {
    const auto q = nqueens_qubo(5);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t mask = rng() & ((std::uint64_t{1} << 25) - 1);
        const auto points = points_of(mask, 5);
        REQUIRE(q.energy(grid_bits(5, points)) == Approx(queens_energy(points)));
    }
}

TEST_CASE("a valid four-queens placement scores -2N", "[nqueens]") {
    // cells 2, 8, 9, 15 counted from 1 in row-major order
    const std::vector<std::pair<std::size_t, std::size_t>> points{{0, 1}, {1, 3}, {2, 0}, {3, 2}};
    CHECK(nqueens_qubo(4).energy(grid_bits(4, points)) == Approx(-8.0));
    CHECK(testing::non_attacking(points));
}

TEST_CASE("exhaustive four-queens minimum", "[nqueens]") {
    const auto q = nqueens_qubo(4);
    const auto oracle = testing::brute_force_minimum(
            16, [](std::uint64_t mask) { return queens_energy(points_of(mask, 4)); });
    CHECK(oracle.energy == Approx(-8.0));
    CHECK(oracle.argmin.size() == 2);

    const auto result = exact_solve(q);
    REQUIRE(result.records().size() == 2);
    for (const auto& record : result.records()) {
        CHECK(record.energy == Approx(-8.0));
        const auto design = decode_design(record.assignment, DesignGrid{4});
        CHECK(design.valid());
        CHECK(testing::non_attacking(design.points));
        CHECK(design.points.size() == 4);
    }
}

TEST_CASE("design flags", "[decode]") {
    SECTION("empty grid") {
        const auto d = decode_design(std::vector<std::int8_t>(9, 0), DesignGrid{3});
        CHECK(d.points.empty());
        CHECK_FALSE(d.row_latin);
        CHECK_FALSE(d.column_latin);
        CHECK_FALSE(d.diagonal_free);
    }
    SECTION("eight queens") {
        const std::vector<std::pair<std::size_t, std::size_t>> points{
                {0, 0}, {1, 4}, {2, 7}, {3, 5}, {4, 2}, {5, 6}, {6, 1}, {7, 3}};
        const auto d = decode_design(grid_bits(8, points), DesignGrid{8});
        CHECK(d.row_latin);
        CHECK(d.column_latin);
        CHECK(d.diagonal_free);
        CHECK(d.valid());
        CHECK(d.points == points);
    }
    SECTION("two in a row") {
        const auto d = decode_design(grid_bits(3, {{0, 0}, {0, 2}, {1, 1}}), DesignGrid{3});
        CHECK_FALSE(d.row_latin);
    }
    SECTION("latin square on a diagonal") {
        const auto d = decode_design(grid_bits(3, {{0, 0}, {1, 1}, {2, 2}}), DesignGrid{3});
        CHECK(d.row_latin);
        CHECK(d.column_latin);
        CHECK_FALSE(d.diagonal_free);
        CHECK_FALSE(d.valid());
    }
    CHECK_THROWS_AS(decode_design(std::vector<std::int8_t>(5, 0), DesignGrid{2}),
                    InvalidArgument);
}

TEST_CASE("two-by-two has no valid design", "[generate]") {
    const auto run = generate_design(2, SamplerConfig{});
    CHECK_FALSE(run.design.valid());
    CHECK_FALSE(run.design.diagonal_free);
    const auto oracle = testing::brute_force_minimum(
            4, [](std::uint64_t mask) { return queens_energy(points_of(mask, 2)); });
    CHECK(run.samples.lowest().energy == Approx(oracle.energy));
}

TEST_CASE("annealing finds a five-queens design", "[generate]") {
    SamplerConfig sa;
    sa.kind = SamplerKind::SimulatedAnnealing;
    sa.params.num_reads = 300;
    sa.params.sa_sweeps = 200;
    sa.params.seed = 2;
    const auto run = generate_design(5, sa);
    CHECK(run.design.valid());
    CHECK(run.samples.lowest().energy == Approx(-10.0));
}

TEST_CASE("a starved annealer misses the eight-queens design", "[generate]") {
    SamplerConfig sa;
    sa.kind = SamplerKind::SimulatedAnnealing;
    sa.params.num_reads = 1;
    sa.params.sa_sweeps = 1;
    sa.params.sa_beta_initial = 0.01;
    sa.params.sa_beta_final = 0.01;
    const auto run = generate_design(8, sa);
    CHECK_FALSE(run.design.valid());
}

TEST_CASE("embedded design run", "[generate]") {
    SamplerConfig sa;
    sa.kind = SamplerKind::SimulatedAnnealing;
    sa.params.num_reads = 200;
    sa.params.sa_sweeps = 200;
    DesignEmbedding hw{chimera(4, 4, 4), EmbeddingOptions{}, UnembedOptions{}};
    const auto run = generate_design(3, sa, hw);
    REQUIRE(run.embedding.has_value());
    CHECK(verify_embedding(interaction_graph(nqueens_qubo(3)), hw.topology.graph(), *run.embedding)
                  .ok());
    const auto oracle = testing::brute_force_minimum(
            9, [](std::uint64_t mask) { return queens_energy(points_of(mask, 3)); });
    CHECK(run.samples.lowest().energy == Approx(oracle.energy));
    CHECK_FALSE(run.design.valid());
}
