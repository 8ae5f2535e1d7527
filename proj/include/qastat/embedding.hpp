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
#include <vector>

#include <nlohmann/json.hpp>

#include "qastat/chimera.hpp"
#include "qastat/model.hpp"
#include "qastat/sample_set.hpp"
#include "qastat/samplers.hpp"

namespace qastat {

/// Logical variable -> chain of physical qubits, plus the single coupling
/// applied along every chain edge.
struct Embedding {
    std::vector<std::vector<std::size_t>> chains;  // each chain sorted ascending
    double chain_strength = -5.0;

    std::size_t num_qubits() const;
    std::size_t max_chain_length() const;
    /// Every qubit used by some chain, ascending. Variable k of an embedded
    /// model corresponds to used_qubits()[k].
    std::vector<std::size_t> used_qubits() const;
};

struct EmbeddingCheck {
    bool disjoint = true;
    bool connected = true;
    bool covers_edges = true;
    std::string message;

    bool ok() const { return disjoint && connected && covers_edges; }
};

/// Structural validation: non-empty pairwise-disjoint chains, each inducing
/// a connected subgraph of `hardware`, and a hardware edge between the
/// chains of every logical edge.
EmbeddingCheck verify_embedding(const Graph& logical, const Graph& hardware,
                                const Embedding& embedding);

struct EmbeddingOptions {
    std::uint64_t seed = 0;
    std::size_t max_restarts = 10;
    /// Tear-up-and-reroute passes allowed per restart while chains overlap.
    std::size_t max_passes = 64;
    /// Extra overlap-free passes that only accept shorter chains.
    std::size_t refine_passes = 8;
    double chain_strength = -5.0;
};

/// Randomized minor embedding. Restart r uses derive_seed(seed, r); the
/// first restart to produce a valid embedding wins. When every restart fails
/// the clique layout for logical.num_nodes() variables is used, with chains
/// shortened where the graph is not complete. Throws EmbeddingError if
/// nothing fits and InvalidArgument for an empty graph.
Embedding find_embedding(const Graph& logical, const ChimeraGraph& hardware,
                         const EmbeddingOptions& options = {});

/// Deterministic K_n layout: variable v = L*b + k gets the side-1 qubits k of
/// cells (b, 0..b) and the side-0 qubits k of cells (b..t-1, b), where
/// t = ceil(n / L). Chains have length t + 1. Needs a t x t corner.
Embedding clique_embedding(std::size_t num_variables, const ChimeraGraph& hardware,
                           double chain_strength = -5.0);

/// Physical Ising model over embedding.used_qubits() (compact indexing).
/// Linear terms are spread evenly over each chain; each coupling sits on
/// the first hardware edge between the two chains, or is split over the
/// fewest such edges that keep it inside `range`; every intra-chain edge
/// gets the chain strength, and the offset is corrected so an unbroken
/// assignment reproduces the logical energy.
IsingModel embed_model(const IsingModel& logical, const Embedding& embedding,
                       const ChimeraGraph& hardware, const HardwareRange& range = {});

struct UnembedOptions {
    /// Drop reads with any broken chain instead of majority-voting them.
    bool discard_broken = false;
};

/// Majority vote per chain; a tie takes the value of the chain's
/// lowest-indexed qubit. Records are rescored on `logical` and carry their
/// broken-chain count. `physical` may use compact indexing (see
/// embed_model) or be indexed by hardware node.
SampleSet unembed(const SampleSet& physical, const Embedding& embedding,
                  const IsingModel& logical, const UnembedOptions& options = {});

/// Embed, sample and unembed in one call. The logical result is expressed
/// in the model's own convention.
struct EmbeddedRun {
    Embedding embedding;
    IsingModel physical;
    SampleSet physical_samples;
    SampleSet logical_samples;
};

template <Vartype V>
EmbeddedRun sample_embedded(const QuadraticModel<V>& model, const SamplerConfig& sampler,
                            const ChimeraGraph& hardware, const EmbeddingOptions& options,
                            const UnembedOptions& unembed_options = {}, std::uint64_t stream = 0);

/// Mean fraction of broken chains per read.
double broken_chain_fraction(const SampleSet& unembedded, const Embedding& embedding);

/// `{"chains":{"0":[12,20],...},"chain_strength":-5.0}`.
nlohmann::json to_json(const Embedding& embedding);
Embedding embedding_from_json(const nlohmann::json& document);

}  // namespace qastat
