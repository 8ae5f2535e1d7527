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

#include <limits>
#include <vector>

#include "qastat/rng.hpp"
#include "qastat/samplers.hpp"
#include "sampler_kernels.hpp"

namespace qastat::serial {

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
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::pair<std::uint64_t, double>> candidates;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const auto state = detail::mask_to_state(V, mask, n);
            const double e = model.energy(std::span<const std::int8_t>(state));
            if (e > best + screen) continue;
            best = std::min(best, e);
            candidates.emplace_back(mask, e);
        }
        std::vector<std::uint64_t> masks;
        for (const auto& [mask, e] : candidates) {
            if (e <= best + screen) masks.push_back(mask);
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
    for (std::size_t r = 0; r < params.num_reads; ++r) {
        auto rng = read_engine(params.seed, r);
        reads[r] = detail::anneal_read(compact, betas, rng);
    }
    return detail::annealing_result(model, params, reads);
}

template <Vartype V>
SampleSet noisy_boltzmann_sample(const QuadraticModel<V>& model, const NoiseModel& noise,
                                 const SamplerParams& params, const HardwareRange& range) {
    params.validate();
    const detail::BoltzmannPlan plan(model, noise, params.seed, range);
    std::vector<std::vector<std::int8_t>> reads(params.num_reads);
    for (std::size_t r = 0; r < params.num_reads; ++r) reads[r] = plan.read(r);
    return plan.collect(model, std::move(reads));
}

#define QASTAT_INSTANTIATE(V)                                                              \
    template SampleSet exact_solve(const QuadraticModel<V>&, const ExactOptions&);         \
    template SampleSet simulated_anneal(const QuadraticModel<V>&, const SamplerParams&);   \
    template SampleSet noisy_boltzmann_sample(const QuadraticModel<V>&, const NoiseModel&, \
                                              const SamplerParams&, const HardwareRange&);

QASTAT_INSTANTIATE(Vartype::Binary)
QASTAT_INSTANTIATE(Vartype::Spin)

#undef QASTAT_INSTANTIATE

}  // namespace qastat::serial
