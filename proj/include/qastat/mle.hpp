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
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qastat/model.hpp"
#include "qastat/samplers.hpp"

namespace qastat {

/// Non-negative fixed-point encoding value = sum_i 2^{p_i} q_i with
/// strictly decreasing powers p_i.
class BinaryEncoding {
 public:
    BinaryEncoding() = default;
    explicit BinaryEncoding(std::vector<int> powers);

    /// Powers high, high-1, ..., low.
    static BinaryEncoding from_range(int high, int low);

    const std::vector<int>& powers() const { return powers_; }
    std::size_t size() const { return powers_.size(); }
    double weight(std::size_t i) const { return std::ldexp(1.0, powers_.at(i)); }
    double max_value() const;
    /// Smallest representable step, 2^{min power}; 0 for an empty encoding.
    double resolution() const;

    friend bool operator==(const BinaryEncoding&, const BinaryEncoding&) = default;

 private:
    std::vector<int> powers_;
};

/// Throws InvalidArgument when bits.size() != encoding.size().
double decode(std::span<const std::int8_t> bits, const BinaryEncoding& encoding);

/// Per-datum log-likelihood and its first and second partial derivatives.
struct LogLikelihoodTerms {
    double value = 0.0;
    double d_theta = 0.0;
    double d_phi = 0.0;
    double d_theta_theta = 0.0;
    double d_theta_phi = 0.0;
    double d_phi_phi = 0.0;

    bool finite() const;
    LogLikelihoodTerms& operator+=(const LogLikelihoodTerms& other);
};

/// A two-parameter family f(x | theta, phi). Implementations supply the
/// per-datum log density and its derivatives; the QUBO builder needs
/// nothing else.
class TwoParameterFamily {
 public:
    virtual ~TwoParameterFamily() = default;
    virtual std::string name() const = 0;
    virtual LogLikelihoodTerms evaluate(double theta, double phi, double x) const = 0;
};

/// N(theta, phi^2): theta is the mean, phi the standard deviation.
class NormalFamily final : public TwoParameterFamily {
 public:
    std::string name() const override { return "normal"; }
    LogLikelihoodTerms evaluate(double theta, double phi, double x) const override;
};

/// Resolves a family by CLI name ("normal").
std::shared_ptr<const TwoParameterFamily> make_family(const std::string& name);

struct MleProblem {
    std::vector<double> data;
    std::shared_ptr<const TwoParameterFamily> family = std::make_shared<NormalFamily>();
    BinaryEncoding theta_encoding;
    BinaryEncoding phi_encoding;

    /// Sum over the data, accumulated in data order.
    LogLikelihoodTerms totals(double theta, double phi) const;
    double log_likelihood(double theta, double phi) const { return totals(theta, phi).value; }
    std::size_t num_qubits() const { return theta_encoding.size() + phi_encoding.size(); }
};

struct MleIterate {
    std::size_t iteration = 0;  // 1-based
    double theta = 0.0;
    double phi = 0.0;
    double energy = 0.0;          // QUBO energy of the chosen assignment
    double log_likelihood = 0.0;  // exact, at (theta, phi)
};

/// Raised when the likelihood or a derivative is not finite at an
/// expansion point. Carries whatever trace was built before the failure.
class ExpansionPointError : public std::runtime_error {
 public:
    ExpansionPointError(const std::string& message, std::vector<MleIterate> partial);
    const std::vector<MleIterate>& partial_trace() const { return partial_; }

 private:
    std::vector<MleIterate> partial_;
};

/// QUBO whose energy is minus the two-term Taylor expansion of the summed
/// log-likelihood about (theta0, phi0), evaluated at the decoded
/// (theta, phi). Variables are the theta qubits followed by the phi qubits;
/// the qubit-free Taylor terms land in the offset.
QuboModel taylor_qubo(const MleProblem& problem, double theta0, double phi0);

/// Decoded (theta, phi) of a full assignment over taylor_qubo's variables.
std::pair<double, double> decode_parameters(const MleProblem& problem,
                                            std::span<const std::int8_t> bits);


struct MleTrace {
    std::vector<MleIterate> iterations;
    /// Non-fatal observations, e.g. the likelihood dropping between iterates.
    std::vector<std::string> diagnostics;

    /// Iterate with the largest exact log-likelihood (earliest on ties).
    const MleIterate& best() const;
};

/// Fixed-count iteration: expand about the current point, minimise the QUBO
/// with the sampler (iteration i uses seed substream i), take the
/// lowest-energy record, decode, re-centre.
MleTrace run_mle(const MleProblem& problem, double theta0, double phi0,
                 const SamplerConfig& sampler, std::size_t iterations);

}  // namespace qastat
