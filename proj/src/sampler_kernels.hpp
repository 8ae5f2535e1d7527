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

// Per-read kernels shared by the parallel samplers and their serial
// references.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "qastat/detail/compact_model.hpp"
#include "qastat/rng.hpp"
#include "qastat/samplers.hpp"

namespace qastat::detail {

inline std::int8_t low_value(Vartype vartype) { return vartype == Vartype::Binary ? 0 : -1; }

inline std::int8_t bit_value(Vartype vartype, std::uint64_t mask, std::size_t i) {
    const bool set = (mask >> i) & 1u;
    return vartype == Vartype::Binary ? static_cast<std::int8_t>(set) : (set ? 1 : -1);
}

inline std::vector<std::int8_t> mask_to_state(Vartype vartype, std::uint64_t mask, std::size_t n) {
    std::vector<std::int8_t> state(n);
    for (std::size_t i = 0; i < n; ++i) state[i] = bit_value(vartype, mask, i);
    return state;
}

/// Change of value when variable i flips from `current`.
inline double flip_change(Vartype vartype, std::int8_t current) {
    return vartype == Vartype::Binary ? 1.0 - 2.0 * current : -2.0 * current;
}

inline void apply_flip(const CompactModel& m, std::vector<std::int8_t>& state,
                       std::vector<double>& field, std::size_t i) {
    const double change = flip_change(m.vartype, state[i]);
    for (std::size_t k = m.row_start[i]; k < m.row_start[i + 1]; ++k) {
        field[m.neighbor[k]] += m.weight[k] * change;
    }
    state[i] = static_cast<std::int8_t>(state[i] + change);
}

/// Visits every assignment whose high bits equal `prefix`, in Gray-code
/// order over the low `low_bits` variables, with an incrementally updated
/// energy. `visit(mask, energy)`.
template <typename Visit>
void gray_walk(const CompactModel& m, std::uint64_t prefix, std::size_t low_bits, Visit&& visit) {
    const std::size_t n = m.num_variables;
    std::uint64_t mask = prefix << low_bits;
    std::vector<std::int8_t> state = mask_to_state(m.vartype, mask, n);
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = m.field(i, state);
    double energy = m.energy(state);
    visit(mask, energy);

    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const auto i = static_cast<std::size_t>(std::countr_zero(t));
        energy += flip_change(m.vartype, state[i]) * field[i];
        apply_flip(m, state, field, i);
        mask ^= std::uint64_t{1} << i;
        visit(mask, energy);
    }
}

inline std::vector<double> geometric_schedule(const SamplerParams& params) {
    std::vector<double> betas(params.sa_sweeps);
    if (params.sa_sweeps == 1) {
        betas[0] = params.sa_beta_final;
        return betas;
    }
    const double ratio = params.sa_beta_final / params.sa_beta_initial;
    for (std::size_t k = 0; k < params.sa_sweeps; ++k) {
        betas[k] = params.sa_beta_initial *
                   std::pow(ratio, static_cast<double>(k) / static_cast<double>(params.sa_sweeps - 1));
    }
    return betas;
}

inline std::vector<std::int8_t> random_state(Vartype vartype, std::size_t n, std::mt19937_64& rng) {
    std::vector<std::int8_t> state(n);
    for (auto& v : state) {
        const bool set = (rng() >> 63) != 0;
        v = vartype == Vartype::Binary ? static_cast<std::int8_t>(set) : (set ? 1 : -1);
    }
    return state;
}

/// One simulated-annealing restart from a uniformly random state.
inline std::vector<std::int8_t> anneal_read(const CompactModel& m, const std::vector<double>& betas,
                                            std::mt19937_64& rng) {
    const std::size_t n = m.num_variables;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto state = random_state(m.vartype, n, rng);
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = m.field(i, state);

    for (double beta : betas) {
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = flip_change(m.vartype, state[i]) * field[i];
            if (delta <= 0.0 || uniform(rng) < std::exp(-beta * delta)) {
                apply_flip(m, state, field, i);
            }
        }
    }
    return state;
}

/// Copy of `base` with per-coefficient Gaussian perturbations: linear terms
/// first in index order, then interactions in key order.
inline CompactModel perturb(const CompactModel& base, const NoiseModel& noise,
                            std::mt19937_64& rng) {
    CompactModel perturbed = base;
    auto draw = [&rng](double bias, double sigma) {
        if (sigma == 0.0) return bias;
        return std::normal_distribution<double>(bias, sigma)(rng);
    };
    for (auto& a : perturbed.linear) a += draw(noise.bias_a, noise.sigma_a);
    for (const auto& [first, second] : perturbed.edge_slots) {
        const double b = perturbed.weight[first] + draw(noise.bias_b, noise.sigma_b);
        perturbed.weight[first] = b;
        perturbed.weight[second] = b;
    }
    return perturbed;
}

/// Cumulative Boltzmann weights exp(-(E - E_min)/tau) over all 2^n states,
/// indexed by bitmask.
inline std::vector<double> boltzmann_cdf(const CompactModel& m, double tau) {
    const std::size_t n = m.num_variables;
    std::vector<double> energy(std::size_t{1} << n);
    gray_walk(m, 0, n, [&energy](std::uint64_t mask, double e) { energy[mask] = e; });
    const double e_min = *std::min_element(energy.begin(), energy.end());
    double running = 0.0;
    for (auto& e : energy) {
        running += std::exp(-(e - e_min) / tau);
        e = running;
    }
    return energy;
}

inline std::uint64_t draw_from_cdf(const std::vector<double>& cdf, std::mt19937_64& rng) {
    const double u = std::uniform_real_distribution<double>(0.0, cdf.back())(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                               static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

/// Heat-bath chain on a spin model from a random state; returns the state
/// after `sweeps` full sweeps.
inline std::vector<std::int8_t> gibbs_read(const CompactModel& m, double tau, std::size_t sweeps,
                                           std::mt19937_64& rng) {
    const std::size_t n = m.num_variables;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto state = random_state(Vartype::Spin, n, rng);
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = m.field(i, state);
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            // P(s_i = +1 | rest) = 1 / (1 + exp(2 f_i / tau))
            const double p_up = 1.0 / (1.0 + std::exp(2.0 * field[i] / tau));
            const std::int8_t target = uniform(rng) < p_up ? 1 : -1;
            if (target != state[i]) apply_flip(m, state, field, i);
        }
    }
    return state;
}

}  // namespace qastat::detail

namespace qastat::detail {

/// Tolerance under which incrementally accumulated energies are treated as
/// ground-state candidates; generous relative to Gray-walk rounding.
inline double screening_tolerance(const CompactModel& m) { return 1e-8 * (1.0 + m.magnitude()); }

/// Tolerance under which recomputed energies count as tied.
inline double tie_tolerance(const CompactModel& m) { return 1e-12 * (1.0 + m.magnitude()); }

inline void check_exact_capacity(std::size_t n, const ExactOptions& options) {
    if (n > kExactMaxVariables) {
        throw CapacityError("exact_solve supports at most " + std::to_string(kExactMaxVariables) +
                            " variables, got " + std::to_string(n));
    }
    if (options.full_spectrum && n > kSpectrumMaxVariables) {
        throw CapacityError("full spectrum supports at most " +
                            std::to_string(kSpectrumMaxVariables) + " variables, got " +
                            std::to_string(n));
    }
}

/// Rescores candidate masks on the clean model and keeps the tied minima.
template <Vartype V>
SampleSet minima_from_candidates(const QuadraticModel<V>& model,
                                 const std::vector<std::uint64_t>& masks, double tie) {
    const std::size_t n = model.num_variables();
    std::vector<SampleRecord> records;
    records.reserve(masks.size());
    double best = std::numeric_limits<double>::infinity();
    for (auto mask : masks) {
        auto state = mask_to_state(V, mask, n);
        const double e = model.energy(std::span<const std::int8_t>(state));
        best = std::min(best, e);
        records.push_back({std::move(state), e, 1, 0});
    }
    std::erase_if(records, [&](const SampleRecord& r) { return r.energy > best + tie; });
    SampleSet samples(V, n);
    samples.add_all(std::move(records));
    return samples;
}

template <Vartype V>
SampleSet full_spectrum(const QuadraticModel<V>& model) {
    const std::size_t n = model.num_variables();
    std::vector<SampleRecord> records;
    records.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto state = mask_to_state(V, mask, n);
        const double e = model.energy(std::span<const std::int8_t>(state));
        records.push_back({std::move(state), e, 1, 0});
    }
    SampleSet samples(V, n);
    samples.add_all(std::move(records));
    return samples;
}

/// Everything needed to produce one emulated-annealer read.
struct BoltzmannPlan {
    CompactModel hardware;  // rescaled Ising form
    double scale = 1.0;
    NoiseModel noise;
    std::uint64_t seed = 0;
    bool exact = true;
    std::vector<double> shared_cdf;  // populated when the law is the same for every read

    template <Vartype V>
    BoltzmannPlan(const QuadraticModel<V>& model, const NoiseModel& noise_model,
                  std::uint64_t seed_value, const HardwareRange& range)
            : noise(noise_model), seed(seed_value) {
        noise.validate();
        RescaledModel rescaled = [&] {
            if constexpr (V == Vartype::Binary) {
                return rescale_to_hardware(qubo_to_ising(model), range);
            } else {
                return rescale_to_hardware(model, range);
            }
        }();
        hardware = CompactModel::from(rescaled.model);
        scale = rescaled.scale;
        exact = hardware.num_variables <= noise.exact_max_variables;
        if (exact && hardware.num_variables > kExactMaxVariables) {
            throw CapacityError("exact Boltzmann draws limited to " +
                                std::to_string(kExactMaxVariables) + " variables");
        }
        if (exact && noise.noiseless()) shared_cdf = boltzmann_cdf(hardware, noise.tau);
    }

    /// Spin state of read `r`.
    std::vector<std::int8_t> read(std::size_t r) const {
        auto rng = read_engine(seed, r);
        if (!shared_cdf.empty()) {
            return mask_to_state(Vartype::Spin, draw_from_cdf(shared_cdf, rng),
                                 hardware.num_variables);
        }
        const CompactModel perturbed = noise.noiseless() ? hardware : perturb(hardware, noise, rng);
        if (exact) {
            const auto cdf = boltzmann_cdf(perturbed, noise.tau);
            return mask_to_state(Vartype::Spin, draw_from_cdf(cdf, rng), hardware.num_variables);
        }
        return gibbs_read(perturbed, noise.tau, noise.gibbs_burn_in, rng);
    }

    template <Vartype V>
    SampleSet collect(const QuadraticModel<V>& model,
                      std::vector<std::vector<std::int8_t>> spin_reads) const {
        if constexpr (V == Vartype::Binary) {
            for (auto& read : spin_reads) read = spins_to_bits(read);
        }
        SampleSet samples = SampleSet::from_reads(model, spin_reads);
        samples.info() = {{"backend", "boltzmann"},
                          {"seed", seed},
                          {"reads", spin_reads.size()},
                          {"tau", noise.tau},
                          {"sigma_a", noise.sigma_a},
                          {"sigma_b", noise.sigma_b},
                          {"bias_a", noise.bias_a},
                          {"bias_b", noise.bias_b},
                          {"scale", scale},
                          {"method", exact ? "exact" : "gibbs"}};
        if (!exact) samples.info()["gibbs_burn_in"] = noise.gibbs_burn_in;
        return samples;
    }
};

template <Vartype V>
SampleSet annealing_result(const QuadraticModel<V>& model, const SamplerParams& params,
                           const std::vector<std::vector<std::int8_t>>& reads) {
    SampleSet samples = SampleSet::from_reads(model, reads);
    samples.info() = {{"backend", "sa"},
                      {"seed", params.seed},
                      {"reads", params.num_reads},
                      {"sweeps", params.sa_sweeps},
                      {"beta_initial", params.sa_beta_initial},
                      {"beta_final", params.sa_beta_final}};
    return samples;
}

}  // namespace qastat::detail
