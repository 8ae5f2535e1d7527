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
#include <string>

#include "qastat/model.hpp"
#include "qastat/sample_set.hpp"

namespace qastat {

/// Largest problem exact_solve will enumerate.
inline constexpr std::size_t kExactMaxVariables = 24;

/// Largest problem for which the full energy spectrum may be requested.
inline constexpr std::size_t kSpectrumMaxVariables = 20;

struct SamplerParams {
    std::size_t num_reads = 1000;
    std::uint64_t seed = 0;
    std::size_t sa_sweeps = 1000;
    double sa_beta_initial = 0.1;
    double sa_beta_final = 10.0;

    void validate() const;
};

/// Per-read coefficient noise and Boltzmann temperature for the annealer
/// emulator. Perturbations are Gaussian, i.i.d. per read and per coefficient,
/// and act on the hardware-scaled Ising coefficients.
struct NoiseModel {
    double sigma_a = 0.05;
    double sigma_b = 0.05;
    double bias_a = 0.0;
    double bias_b = 0.0;
    double tau = 1.0;
    /// Exact categorical draws up to this many variables, Gibbs beyond.
    std::size_t exact_max_variables = 20;
    /// Heat-bath sweeps per read before the state is taken (Gibbs path only).
    std::size_t gibbs_burn_in = 1000;

    void validate() const;
    bool noiseless() const {
        return sigma_a == 0.0 && sigma_b == 0.0 && bias_a == 0.0 && bias_b == 0.0;
    }
};

struct ExactOptions {
    /// Return every assignment (sorted by energy) instead of the minima only.
    bool full_spectrum = false;
};

/// All assignments attaining the global minimum, one occurrence each.
/// Deterministic; throws CapacityError above kExactMaxVariables.
template <Vartype V>
SampleSet exact_solve(const QuadraticModel<V>& model, const ExactOptions& options = {});

/// Independent restarts of single-flip Metropolis annealing with a
/// geometric inverse-temperature schedule. Deterministic given the seed,
/// independent of thread count.
template <Vartype V>
SampleSet simulated_anneal(const QuadraticModel<V>& model, const SamplerParams& params);

/// Emulates one annealer submission: convert to Ising, rescale into
/// `range`, perturb the coefficients per read, draw from the Boltzmann law
/// P ~ exp(-E*/tau) of the perturbed model, score on the clean model.
template <Vartype V>
SampleSet noisy_boltzmann_sample(const QuadraticModel<V>& model, const NoiseModel& noise,
                                 const SamplerParams& params, const HardwareRange& range = {});

/// Single-threaded reference implementations. exact_solve here scores every
/// assignment from scratch; the others run the same per-read kernels as the
/// parallel versions in a plain loop and must agree with them exactly.
namespace serial {

template <Vartype V>
SampleSet exact_solve(const QuadraticModel<V>& model, const ExactOptions& options = {});

template <Vartype V>
SampleSet simulated_anneal(const QuadraticModel<V>& model, const SamplerParams& params);

template <Vartype V>
SampleSet noisy_boltzmann_sample(const QuadraticModel<V>& model, const NoiseModel& noise,
                                 const SamplerParams& params, const HardwareRange& range = {});

}  // namespace serial

enum class SamplerKind { Exact, SimulatedAnnealing, NoisyBoltzmann };

SamplerKind parse_sampler_kind(const std::string& name);
std::string to_string(SamplerKind kind);

/// A backend choice plus everything it needs, so applications can take
/// "a sampler" as one value.
struct SamplerConfig {
    SamplerKind kind = SamplerKind::Exact;
    SamplerParams params;
    NoiseModel noise;
    HardwareRange range;
    ExactOptions exact;
};

/// Runs the configured backend. `stream` selects an independent seed
/// substream (see derive_seed) so repeated calls inside one pipeline do not
/// reuse random numbers.
template <Vartype V>
SampleSet sample(const SamplerConfig& config, const QuadraticModel<V>& model,
                 std::uint64_t stream = 0);

nlohmann::json to_json(const SamplerConfig& config);

}  // namespace qastat
