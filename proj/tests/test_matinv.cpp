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
#include <omp.h>

#include "oracles.hpp"
#include "qastat/matinv.hpp"

using namespace qastat;
using Catch::Approx;

namespace {

Eigen::MatrixXd sample_matrix() {
    Eigen::MatrixXd a(3, 3);
    a << 1.344, 0.418, -0.935, -1.018, 1.095, -0.250, 0.277, -0.384, 0.755;
    return a;
}

/// ||A v - e_k||^2 evaluated directly.
double column_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, std::size_t k) {
    Eigen::VectorXd target = Eigen::VectorXd::Zero(a.rows());
    target(static_cast<Eigen::Index>(k)) = 1.0;
    return (a * v - target).squaredNorm();
}

}  // namespace

TEST_CASE("gram terms", "[precompute]") {
    const auto identity = precompute(Eigen::MatrixXd::Identity(3, 3));
    CHECK(identity.alpha.isApprox(Eigen::Vector3d::Ones()));
    CHECK(identity.beta(0, 1) == 0.0);
    CHECK(identity.beta(2, 0) == 0.0);

    const auto paper = precompute(sample_matrix());
    CHECK(paper.alpha(0) == Approx(1.344 * 1.344 + 1.018 * 1.018 + 0.277 * 0.277));
    CHECK(paper.alpha(0) == Approx(2.9194).margin(1e-4));

    const Eigen::MatrixXd random = Eigen::MatrixXd::Random(5, 5);
    const auto p = precompute(random);
    for (Eigen::Index r = 0; r < 5; ++r) {
        for (Eigen::Index s = 0; s < 5; ++s) CHECK(p.beta(r, s) == Approx(p.beta(s, r)));
    }
    CHECK(p.column_qubits(0) == 5 * 6);
}

TEST_CASE("precompute validation", "[precompute]") {
    CHECK_THROWS_AS(precompute(Eigen::MatrixXd(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(precompute(Eigen::MatrixXd(0, 0)), InvalidArgument);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(precompute(bad), InvalidArgument);
    CHECK_THROWS_AS(precompute(Eigen::MatrixXd::Identity(2, 2),
                               std::vector<BinaryEncoding>(3, default_inverse_encoding())),
                    InvalidArgument);
}

TEST_CASE("column energy is the squared residual", "[column]") {
    const auto problem = precompute(sample_matrix());
    std::mt19937_64 rng(13);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto qubo = column_qubo(problem, k);
        REQUIRE(qubo.num_variables() == 18);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<std::int8_t> bits(18);
            for (auto& b : bits) b = coin(rng) ? 1 : 0;
            const auto v = decode_column(problem, k, bits);
            REQUIRE(qubo.energy(bits) ==
                    Approx(column_residual(problem.a, v, k)).margin(1e-9));
        }
    }
    CHECK_THROWS_AS(column_qubo(problem, 3), InvalidArgument);
}

TEST_CASE("trivial inverses", "[column]") {
    SECTION("identity with a single unit qubit") {
        const auto problem = precompute(Eigen::MatrixXd::Identity(3, 3), BinaryEncoding({0}));
        const auto best = exact_solve(column_qubo(problem, 0));
        REQUIRE(best.records().size() == 1);
        CHECK(best.lowest().energy == Approx(0.0).margin(1e-12));
        CHECK(decode_column(problem, 0, best.lowest().assignment).isApprox(Eigen::Vector3d(1, 0, 0)));
    }
    SECTION("two times the 1x1 identity") {
        const auto problem =
                precompute(Eigen::MatrixXd::Constant(1, 1, 2.0), BinaryEncoding::from_range(0, -1));
        const auto best = exact_solve(column_qubo(problem, 0));
        CHECK(best.lowest().energy == Approx(0.0).margin(1e-12));
        CHECK(decode_column(problem, 0, best.lowest().assignment)(0) == 0.5);
    }
    SECTION("identity inverts exactly") {
        const auto result = invert(precompute(Eigen::MatrixXd::Identity(4, 4)), SamplerConfig{});
        CHECK(result.ok());
        CHECK(result.v_hat == Eigen::MatrixXd::Identity(4, 4));
        CHECK(result.residual == 0.0);
    }
}

TEST_CASE("paper matrix inverts to the encoding optimum", "[invert]") {
    const auto problem = precompute(sample_matrix());
    const auto result = invert(problem, SamplerConfig{});
    REQUIRE(result.ok());
    CHECK(result.warnings.empty());
    for (std::size_t k = 0; k < 3; ++k) {
        const auto oracle = testing::brute_force_minimum(18, [&](std::uint64_t mask) {
            return column_residual(problem.a, decode_column(problem, k, testing::bits_of(mask, 18)),
                                   k);
        });
        CHECK(result.column_energies[k] == Approx(oracle.energy).margin(1e-9));
        CHECK(column_residual(problem.a, result.v_hat.col(static_cast<Eigen::Index>(k)), k) ==
              Approx(oracle.energy).margin(1e-9));
    }
    Eigen::MatrixXd reported(3, 3);
    reported << 0.625, 0.0, 0.75, 0.5, 1.0625, 1.1875, 0.0, 0.5625, 1.6875;
    CHECK(result.residual <= inverse_residual(problem.a, reported));
    CHECK(result.residual == Approx((problem.a * result.v_hat - Eigen::MatrixXd::Identity(3, 3)).norm()));
}

TEST_CASE("finer resolution never hurts", "[invert]") {
    const auto coarse = precompute(sample_matrix(), BinaryEncoding::from_range(0, -4));
    const auto fine = precompute(sample_matrix(), BinaryEncoding::from_range(0, -5));
    const auto a = invert(coarse, SamplerConfig{});
    const auto b = invert(fine, SamplerConfig{});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(b.column_energies[k] <= a.column_energies[k] + 1e-12);
    }
}

TEST_CASE("unrepresentable inverses are flagged", "[invert]") {
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.0, 0.0, -4.0;  // inverse diag(2, -0.25)
    const auto result = invert(precompute(a), SamplerConfig{});
    CHECK(result.ok());
    CHECK(result.warnings.size() == 2);

    const auto singular = invert(precompute(Eigen::MatrixXd::Zero(2, 2)), SamplerConfig{});
    REQUIRE_FALSE(singular.warnings.empty());
    CHECK(singular.warnings.front() == "matrix is numerically singular");
}

TEST_CASE("column failures are reported per column", "[invert]") {
    // 5 qubits per entry * 5 rows exceeds the exact capacity
    const auto problem = precompute(Eigen::MatrixXd::Identity(5, 5), BinaryEncoding::from_range(0, -4));
    const auto result = invert(problem, SamplerConfig{});
    CHECK_FALSE(result.ok());
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK_FALSE(result.column_ok[k]);
        CHECK_FALSE(result.column_errors[k].empty());
    }
}

TEST_CASE("thread count does not change the result", "[invert]") {
    const auto problem = precompute(sample_matrix());
    SamplerConfig sa;
    sa.kind = SamplerKind::SimulatedAnnealing;
    sa.params.num_reads = 40;
    sa.params.sa_sweeps = 50;
    omp_set_num_threads(1);
    const auto one = invert(problem, sa);
    omp_set_num_threads(3);
    const auto three = invert(problem, sa);
    CHECK(one.v_hat == three.v_hat);
    CHECK(one.column_energies == three.column_energies);
}
