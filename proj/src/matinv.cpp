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

#include "qastat/matinv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace qastat {

std::size_t MatInvProblem::column_qubits(std::size_t k) const {
    std::size_t total = 0;
    for (std::size_t r = 0; r < size(); ++r) total += encoding(r, k).size();
    return total;
}

MatInvProblem precompute(const Eigen::MatrixXd& a, const BinaryEncoding& encoding) {
    const auto n = static_cast<std::size_t>(a.rows());
    return precompute(a, std::vector<BinaryEncoding>(n * n, encoding));
}

MatInvProblem precompute(const Eigen::MatrixXd& a, std::vector<BinaryEncoding> per_entry) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidArgument("matrix must be square and non-empty, got " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    if (!a.allFinite()) throw InvalidArgument("matrix has non-finite entries");
    const auto n = static_cast<std::size_t>(a.rows());
    if (per_entry.size() != n * n) throw InvalidArgument("need one encoding per matrix entry");

    MatInvProblem problem;
    problem.a = a;
    problem.encodings = std::move(per_entry);
    problem.beta = a.transpose() * a;
    problem.alpha = problem.beta.diagonal();
    return problem;
}

QuboModel column_qubo(const MatInvProblem& problem, std::size_t k) {
    const std::size_t n = problem.size();
    if (k >= n) {
        throw InvalidArgument("column " + std::to_string(k) + " out of range for " +
                              std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    struct Qubit {
        std::size_t row;
        int power;
    };
    std::vector<Qubit> qubits;
    for (std::size_t r = 0; r < n; ++r) {
        for (int p : problem.encoding(r, k).powers()) qubits.push_back({r, p});
    }

    QuboModel qubo(qubits.size(), 1.0);
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const auto [r, p] = qubits[i];
        const auto ri = static_cast<Eigen::Index>(r);
        const double a_kr = problem.a(static_cast<Eigen::Index>(k), ri);
        qubo.set_linear(i, std::ldexp(problem.alpha(ri), 2 * p) - std::ldexp(a_kr, p + 1));
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            const auto [s, q] = qubits[j];
            const double gram = problem.beta(ri, static_cast<Eigen::Index>(s));
            qubo.set_quadratic(i, j, std::ldexp(gram, p + q + 1));
        }
    }
    return qubo;
}

Eigen::VectorXd decode_column(const MatInvProblem& problem, std::size_t k,
                              std::span<const std::int8_t> bits) {
    if (bits.size() != problem.column_qubits(k)) {
        throw InvalidArgument("assignment does not match column " + std::to_string(k));
    }
    Eigen::VectorXd column(static_cast<Eigen::Index>(problem.size()));
    std::size_t offset = 0;
    for (std::size_t r = 0; r < problem.size(); ++r) {
        const auto& enc = problem.encoding(r, k);
        column(static_cast<Eigen::Index>(r)) = decode(bits.subspan(offset, enc.size()), enc);
        offset += enc.size();
    }
    return column;
}

bool MatInvResult::ok() const {
    return std::all_of(column_ok.begin(), column_ok.end(), [](bool b) { return b; });
}

double inverse_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v) {
    return (a * v - Eigen::MatrixXd::Identity(a.rows(), v.cols())).norm();
}

MatInvResult invert(const MatInvProblem& problem, const SamplerConfig& sampler) {
    const std::size_t n = problem.size();
    const auto ni = static_cast<Eigen::Index>(n);
    MatInvResult result;
    result.v_hat = Eigen::MatrixXd::Zero(ni, ni);
    result.column_energies.assign(n, std::nan(""));
    result.column_ok.assign(n, false);
    result.column_errors.assign(n, "");

    std::vector<char> solved(n, 0);  // vector<bool> is not safe to write concurrently
    const auto columns = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t kk = 0; kk < columns; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        try {
            const QuboModel qubo = column_qubo(problem, k);
            const SampleSet samples = sample(sampler, qubo, k);
            const SampleRecord& lowest = samples.lowest();
            result.v_hat.col(static_cast<Eigen::Index>(k)) = decode_column(problem, k, lowest.assignment);
            result.column_energies[k] = lowest.energy;
            solved[k] = 1;
        } catch (const std::exception& error) {
            result.column_errors[k] = error.what();
        }
    }
    for (std::size_t k = 0; k < n; ++k) result.column_ok[k] = solved[k] != 0;
    result.residual = inverse_residual(problem.a, result.v_hat);

    // Diagnostic only: the encoding cannot represent negative entries.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(problem.a);
    if (!lu.isInvertible()) {
        result.warnings.push_back("matrix is numerically singular");
    } else {
        const Eigen::MatrixXd inverse = lu.inverse();
        if ((inverse.array() < 0.0).any()) {
            result.warnings.push_back(
                    "the inverse has negative entries, which the non-negative encoding cannot "
                    "represent");
        }
        double max_entry = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const double limit = problem.encoding(r, k).max_value();
                const double value = inverse(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
                if (value > limit) max_entry = std::max(max_entry, value);
            }
        }
        if (max_entry > 0.0) {
            std::ostringstream out;
            out << "inverse entry " << max_entry << " exceeds the encoding's largest value";
            result.warnings.push_back(out.str());
        }
    }
    return result;
}

}  // namespace qastat
