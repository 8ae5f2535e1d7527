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

#include "qastat/mle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qastat {

BinaryEncoding::BinaryEncoding(std::vector<int> powers) : powers_(std::move(powers)) {
    for (std::size_t i = 1; i < powers_.size(); ++i) {
        if (powers_[i] >= powers_[i - 1]) {
            throw InvalidArgument("encoding powers must be strictly decreasing");
        }
    }
}

BinaryEncoding BinaryEncoding::from_range(int high, int low) {
    if (low > high) throw InvalidArgument("encoding needs low power <= high power");
    std::vector<int> powers;
    for (int p = high; p >= low; --p) powers.push_back(p);
    return BinaryEncoding(std::move(powers));
}

double BinaryEncoding::max_value() const {
    double total = 0.0;
    for (int p : powers_) total += std::ldexp(1.0, p);
    return total;
}

double BinaryEncoding::resolution() const {
    return powers_.empty() ? 0.0 : std::ldexp(1.0, powers_.back());
}

double decode(std::span<const std::int8_t> bits, const BinaryEncoding& encoding) {
    if (bits.size() != encoding.size()) {
        throw InvalidArgument("block of " + std::to_string(bits.size()) +
                              " bits does not match encoding of " +
                              std::to_string(encoding.size()));
    }
    double value = 0.0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw InvalidArgument("decode expects QUBO bits");
        if (bits[i] == 1) value += encoding.weight(i);
    }
    return value;
}

bool LogLikelihoodTerms::finite() const {
    return std::isfinite(value) && std::isfinite(d_theta) && std::isfinite(d_phi) &&
           std::isfinite(d_theta_theta) && std::isfinite(d_theta_phi) && std::isfinite(d_phi_phi);
}

LogLikelihoodTerms& LogLikelihoodTerms::operator+=(const LogLikelihoodTerms& other) {
    value += other.value;
    d_theta += other.d_theta;
    d_phi += other.d_phi;
    d_theta_theta += other.d_theta_theta;
    d_theta_phi += other.d_theta_phi;
    d_phi_phi += other.d_phi_phi;
    return *this;
}

LogLikelihoodTerms NormalFamily::evaluate(double theta, double phi, double x) const {
    const double r = x - theta;
    const double phi2 = phi * phi;
    const double phi3 = phi2 * phi;
    LogLikelihoodTerms t;
    t.value = -0.5 * std::log(2.0 * std::numbers::pi) - std::log(phi) - r * r / (2.0 * phi2);
    t.d_theta = r / phi2;
    t.d_phi = -1.0 / phi + r * r / phi3;
    t.d_theta_theta = -1.0 / phi2;
    t.d_theta_phi = -2.0 * r / phi3;
    t.d_phi_phi = 1.0 / phi2 - 3.0 * r * r / (phi2 * phi2);
    return t;
}

std::shared_ptr<const TwoParameterFamily> make_family(const std::string& name) {
    if (name == "normal") return std::make_shared<NormalFamily>();
    throw InvalidArgument("unknown model family '" + name + "'");
}

LogLikelihoodTerms MleProblem::totals(double theta, double phi) const {
    if (!family) throw InvalidArgument("MLE problem has no model family");
    std::vector<LogLikelihoodTerms> per_datum(data.size());
    const auto count = static_cast<std::int64_t>(data.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < count; ++d) {
        per_datum[static_cast<std::size_t>(d)] =
                family->evaluate(theta, phi, data[static_cast<std::size_t>(d)]);
    }
    LogLikelihoodTerms sum;
    for (const auto& t : per_datum) sum += t;
    return sum;
}

ExpansionPointError::ExpansionPointError(const std::string& message,
                                         std::vector<MleIterate> partial)
        : std::runtime_error(message), partial_(std::move(partial)) {}

namespace {

std::string point_label(double theta, double phi) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << theta << ", " << phi << ")";
    return out.str();
}

}  // namespace

QuboModel taylor_qubo(const MleProblem& problem, double theta0, double phi0) {
    const LogLikelihoodTerms t = problem.totals(theta0, phi0);
    if (!t.finite()) {
        throw ExpansionPointError("log-likelihood or a derivative is not finite at " +
                                          point_label(theta0, phi0),
                                  {});
    }
    const auto& enc_theta = problem.theta_encoding;
    const auto& enc_phi = problem.phi_encoding;
    const std::size_t n_theta = enc_theta.size();
    QuboModel qubo(problem.num_qubits());

    // T = c + theta*g_theta + phi*g_phi + H_tt theta^2/2 + H_tp theta phi + H_pp phi^2/2
    const double g_theta = t.d_theta - t.d_theta_theta * theta0 - t.d_theta_phi * phi0;
    const double g_phi = t.d_phi - t.d_phi_phi * phi0 - t.d_theta_phi * theta0;
    const double constant = t.value - t.d_theta * theta0 - t.d_phi * phi0 +
                            0.5 * t.d_theta_theta * theta0 * theta0 +
                            t.d_theta_phi * theta0 * phi0 + 0.5 * t.d_phi_phi * phi0 * phi0;

    auto weight = [&](std::size_t q) {
        return q < n_theta ? enc_theta.weight(q) : enc_phi.weight(q - n_theta);
    };
    for (std::size_t q = 0; q < qubo.num_variables(); ++q) {
        const double w = weight(q);
        const bool is_theta = q < n_theta;
        const double g = is_theta ? g_theta : g_phi;
        const double h = is_theta ? t.d_theta_theta : t.d_phi_phi;
        qubo.set_linear(q, -(w * g + 0.5 * w * w * h));
        for (std::size_t r = q + 1; r < qubo.num_variables(); ++r) {
            const bool r_theta = r < n_theta;
            const double curvature = is_theta == r_theta ? (is_theta ? t.d_theta_theta : t.d_phi_phi)
                                                         : t.d_theta_phi;
            qubo.set_quadratic(q, r, -w * weight(r) * curvature);
        }
    }
    qubo.set_offset(-constant);
    return qubo;
}

std::pair<double, double> decode_parameters(const MleProblem& problem,
                                            std::span<const std::int8_t> bits) {
    if (bits.size() != problem.num_qubits()) {
        throw InvalidArgument("assignment does not match the problem's qubit count");
    }
    const std::size_t n_theta = problem.theta_encoding.size();
    return {decode(bits.first(n_theta), problem.theta_encoding),
            decode(bits.subspan(n_theta), problem.phi_encoding)};
}

const MleIterate& MleTrace::best() const {
    if (iterations.empty()) throw InvalidArgument("empty MLE trace");
    const MleIterate* best = nullptr;
    for (const auto& it : iterations) {
        if (std::isnan(it.log_likelihood)) continue;
        if (best == nullptr || it.log_likelihood > best->log_likelihood) best = &it;
    }
    return best != nullptr ? *best : iterations.front();
}

MleTrace run_mle(const MleProblem& problem, double theta0, double phi0,
                 const SamplerConfig& sampler, std::size_t iterations) {
    if (iterations < 1) throw InvalidArgument("run_mle needs at least one iteration");
    MleTrace trace;
    double theta = theta0;
    double phi = phi0;
    for (std::size_t it = 1; it <= iterations; ++it) {
        QuboModel qubo;
        try {
            qubo = taylor_qubo(problem, theta, phi);
        } catch (const ExpansionPointError& error) {
            throw ExpansionPointError(std::string("iteration ") + std::to_string(it) + ": " +
                                              error.what(),
                                      trace.iterations);
        }
        const SampleSet samples = sample(sampler, qubo, it);
        const SampleRecord& lowest = samples.lowest();
        const auto [theta_hat, phi_hat] = decode_parameters(problem, lowest.assignment);

        MleIterate iterate{it, theta_hat, phi_hat, lowest.energy,
                           problem.log_likelihood(theta_hat, phi_hat)};
        if (!trace.iterations.empty() &&
            iterate.log_likelihood < trace.iterations.back().log_likelihood) {
            trace.diagnostics.push_back("log-likelihood decreased at iteration " +
                                        std::to_string(it));
        }
        trace.iterations.push_back(iterate);
        theta = theta_hat;
        phi = phi_hat;
    }
    return trace;
}

}  // namespace qastat
