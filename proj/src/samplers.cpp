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

#include "qastat/samplers.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qastat/rng.hpp"
#include "sampler_kernels.hpp"

namespace qastat {

void SamplerParams::validate() const {
    if (num_reads < 1) throw InvalidArgument("num_reads must be at least 1");
    if (sa_sweeps < 1) throw InvalidArgument("sa_sweeps must be at least 1");
    if (!(sa_beta_initial > 0.0) || !(sa_beta_final >= sa_beta_initial) ||
        !std::isfinite(sa_beta_final)) {
        throw InvalidArgument("require 0 < sa_beta_initial <= sa_beta_final");
    }
}

void NoiseModel::validate() const {
    if (!(sigma_a >= 0.0) || !(sigma_b >= 0.0) || !std::isfinite(sigma_a) ||
        !std::isfinite(sigma_b)) {
        throw InvalidArgument("noise standard deviations must be finite and non-negative");
    }
    if (!std::isfinite(bias_a) || !std::isfinite(bias_b)) {
        throw InvalidArgument("noise biases must be finite");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
}

template <Vartype V>
SampleSet exact_solve(const QuadraticModel<V>& model, const ExactOptions& options) {
    const std::size_t n = model.num_variables();
    detail::check_exact_capacity(n, options);
    SampleSet result;
    if (options.full_spectrum) {
        result = detail::full_spectrum(model);
    } else {
        const auto compact = detail::CompactModel::from(model);
        const double screen = detail::screening_tolerance(compact);

        // High bits select a chunk; each chunk is an independent Gray walk.
        const std::size_t high_bits = std::min<std::size_t>(n, n > 18 ? n - 18 : 6);
        const std::size_t low_bits = n - high_bits;
        const std::int64_t chunks = std::int64_t{1} << high_bits;

        struct Chunk {
            double best = std::numeric_limits<double>::infinity();
            std::vector<std::uint64_t> candidates;
            std::vector<double> energies;
        };
        std::vector<Chunk> found(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < chunks; ++c) {
            Chunk& chunk = found[static_cast<std::size_t>(c)];
            detail::gray_walk(compact, static_cast<std::uint64_t>(c), low_bits,
                              [&chunk, screen](std::uint64_t mask, double e) {
                                  if (e > chunk.best + screen) return;
                                  if (e < chunk.best) {
                                      chunk.best = e;
                                      std::size_t keep = 0;
                                      for (std::size_t k = 0; k < chunk.candidates.size(); ++k) {
                                          if (chunk.energies[k] <= e + screen) {
                                              chunk.candidates[keep] = chunk.candidates[k];
                                              chunk.energies[keep] = chunk.energies[k];
                                              ++keep;
                                          }
                                      }
                                      chunk.candidates.resize(keep);
                                      chunk.energies.resize(keep);
                                  }
                                  chunk.candidates.push_back(mask);
                                  chunk.energies.push_back(e);
                              });
        }

        double best = std::numeric_limits<double>::infinity();
        for (const auto& chunk : found) best = std::min(best, chunk.best);
        std::vector<std::uint64_t> masks;
        for (const auto& chunk : found) {
            for (std::size_t k = 0; k < chunk.candidates.size(); ++k) {
                if (chunk.energies[k] <= best + screen) masks.push_back(chunk.candidates[k]);
            }
        }
        result = detail::minima_from_candidates(model, masks, detail::tie_tolerance(compact));
    }
    result.info() = {{"backend", "exact"}, {"full_spectrum", options.full_spectrum}};
    return result;
}

template <Vartype V>
SampleSet simulated_anneal(const QuadraticModel<V>& model, const SamplerParams& params) {
    params.validate();
    const auto compact = detail::CompactModel::from(model);
    const auto betas = detail::geometric_schedule(params);
    std::vector<std::vector<std::int8_t>> reads(params.num_reads);
    const auto count = static_cast<std::int64_t>(params.num_reads);

#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < count; ++r) {
        auto rng = read_engine(params.seed, static_cast<std::uint64_t>(r));
        reads[static_cast<std::size_t>(r)] = detail::anneal_read(compact, betas, rng);
    }
    return detail::annealing_result(model, params, reads);
}

template <Vartype V>
SampleSet noisy_boltzmann_sample(const QuadraticModel<V>& model, const NoiseModel& noise,
                                 const SamplerParams& params, const HardwareRange& range) {
    params.validate();
    const detail::BoltzmannPlan plan(model, noise, params.seed, range);
    std::vector<std::vector<std::int8_t>> reads(params.num_reads);
    const auto count = static_cast<std::int64_t>(params.num_reads);

#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t r = 0; r < count; ++r) {
        reads[static_cast<std::size_t>(r)] = plan.read(static_cast<std::size_t>(r));
    }
    return plan.collect(model, std::move(reads));
}

SamplerKind parse_sampler_kind(const std::string& name) {
    if (name == "exact") return SamplerKind::Exact;
    if (name == "sa") return SamplerKind::SimulatedAnnealing;
    if (name == "boltzmann") return SamplerKind::NoisyBoltzmann;
    throw InvalidArgument("unknown sampler '" + name + "' (expected exact, sa or boltzmann)");
}

std::string to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Exact: return "exact";
        case SamplerKind::SimulatedAnnealing: return "sa";
        case SamplerKind::NoisyBoltzmann: return "boltzmann";
    }
    return "unknown";
}

template <Vartype V>
SampleSet sample(const SamplerConfig& config, const QuadraticModel<V>& model,
                 std::uint64_t stream) {
    SamplerParams params = config.params;
    params.seed = derive_seed(config.params.seed, stream);
    switch (config.kind) {
        case SamplerKind::Exact: return exact_solve(model, config.exact);
        case SamplerKind::SimulatedAnnealing: return simulated_anneal(model, params);
        case SamplerKind::NoisyBoltzmann:
            return noisy_boltzmann_sample(model, config.noise, params, config.range);
    }
    throw InvalidArgument("unknown sampler kind");
}

nlohmann::json to_json(const SamplerConfig& config) {
    nlohmann::json doc = {{"sampler", to_string(config.kind)}, {"seed", config.params.seed}};
    switch (config.kind) {
        case SamplerKind::Exact:
            doc["full_spectrum"] = config.exact.full_spectrum;
            break;
        case SamplerKind::SimulatedAnnealing:
            doc["reads"] = config.params.num_reads;
            doc["sweeps"] = config.params.sa_sweeps;
            doc["beta_initial"] = config.params.sa_beta_initial;
            doc["beta_final"] = config.params.sa_beta_final;
            break;
        case SamplerKind::NoisyBoltzmann:
            doc["reads"] = config.params.num_reads;
            doc["noise"] = {{"sigma_a", config.noise.sigma_a}, {"sigma_b", config.noise.sigma_b},
                            {"bias_a", config.noise.bias_a},   {"bias_b", config.noise.bias_b},
                            {"tau", config.noise.tau},
                            {"exact_max_variables", config.noise.exact_max_variables},
                            {"gibbs_burn_in", config.noise.gibbs_burn_in}};
            doc["hardware_range"] = {{"h_min", config.range.h_min}, {"h_max", config.range.h_max},
                                     {"j_min", config.range.j_min}, {"j_max", config.range.j_max}};
            break;
    }
    return doc;
}

#define QASTAT_INSTANTIATE(V)                                                                   \
    template SampleSet exact_solve(const QuadraticModel<V>&, const ExactOptions&);              \
    template SampleSet simulated_anneal(const QuadraticModel<V>&, const SamplerParams&);        \
    template SampleSet noisy_boltzmann_sample(const QuadraticModel<V>&, const NoiseModel&,      \
                                              const SamplerParams&, const HardwareRange&);      \
    template SampleSet sample(const SamplerConfig&, const QuadraticModel<V>&, std::uint64_t);

QASTAT_INSTANTIATE(Vartype::Binary)
QASTAT_INSTANTIATE(Vartype::Spin)

#undef QASTAT_INSTANTIATE

}  // namespace qastat
