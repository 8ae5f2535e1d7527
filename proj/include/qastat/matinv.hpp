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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qastat/mle.hpp"
#include "qastat/model.hpp"
#include "qastat/samplers.hpp"

namespace qastat {

/// Six qubits per entry covering [0, 1.96875] in steps of 1/32.
inline BinaryEncoding default_inverse_encoding() { return BinaryEncoding::from_range(0, -5); }

/// Column-wise inversion of A by minimising, for each column k,
///
///     E_k(V) = sum_m (sum_l A_ml V_lk - delta_mk)^2
///
/// over binary-encoded non-negative entries V_rk. alpha and beta are the
/// Gram quantities of A shared by every column.
struct MatInvProblem {
    Eigen::MatrixXd a;
    /// Encoding of V(r, k) at index r * n + k.
    std::vector<BinaryEncoding> encodings;
    Eigen::VectorXd alpha;  // alpha_r = sum_l A_lr^2
    Eigen::MatrixXd beta;   // beta_rs = sum_l A_lr A_ls

    std::size_t size() const { return static_cast<std::size_t>(a.rows()); }
    const BinaryEncoding& encoding(std::size_t r, std::size_t k) const {
        return encodings.at(r * size() + k);
    }
    /// Qubit count of column k (sum of its entries' encoding sizes).
    std::size_t column_qubits(std::size_t k) const;
};

/// Throws InvalidArgument for a non-square or non-finite A.
MatInvProblem precompute(const Eigen::MatrixXd& a,
                         const BinaryEncoding& encoding = default_inverse_encoding());
MatInvProblem precompute(const Eigen::MatrixXd& a, std::vector<BinaryEncoding> per_entry);

/// QUBO for column k. Qubits are grouped by row r (row 0 first), each group
/// ordered as its encoding's powers. Offset 1 makes the energy equal E_k.
QuboModel column_qubo(const MatInvProblem& problem, std::size_t k);

/// Column k of V decoded from a column_qubo assignment.
Eigen::VectorXd decode_column(const MatInvProblem& problem, std::size_t k,
                              std::span<const std::int8_t> bits);

struct MatInvResult {
    Eigen::MatrixXd v_hat;
    std::vector<double> column_energies;
    std::vector<bool> column_ok;
    std::vector<std::string> column_errors;
    double residual = 0.0;  // ||A V_hat - I||_F
    std::vector<std::string> warnings;

    bool ok() const;
};

/// Solves every column independently (concurrently, column k on seed
/// substream k). A failing column leaves zeros in V_hat, is flagged in
/// column_ok, and does not stop the others.
MatInvResult invert(const MatInvProblem& problem, const SamplerConfig& sampler);

/// ||A V - I||_F.
double inverse_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v);

}  // namespace qastat
