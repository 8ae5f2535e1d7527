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
#include <vector>

#include <nlohmann/json.hpp>

#include "qastat/model.hpp"

namespace qastat {

struct SampleRecord {
    std::vector<std::int8_t> assignment;
    double energy = 0.0;
    std::size_t occurrences = 1;
    /// Number of chains that disagreed internally before unembedding.
    std::size_t broken_chains = 0;
};

/// Outcome of one sampler submission. Records are sorted by energy, ties
/// broken by assignment, and identical assignments are merged.
class SampleSet {
 public:
    SampleSet() = default;
    SampleSet(Vartype vartype, std::size_t num_variables)
            : vartype_(vartype), num_variables_(num_variables) {}

    /// Groups raw reads, scores each distinct assignment with `model`.
    template <Vartype V>
    static SampleSet from_reads(const QuadraticModel<V>& model,
                                const std::vector<std::vector<std::int8_t>>& reads);

    Vartype vartype() const { return vartype_; }
    std::size_t num_variables() const { return num_variables_; }
    const std::vector<SampleRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    const SampleRecord& lowest() const;
    std::size_t total_occurrences() const;

    /// Adds a record and restores the ordering invariant. A record whose
    /// assignment and broken-chain count match an existing one is merged.
    void add(SampleRecord record);
    void add_all(std::vector<SampleRecord> records);

    nlohmann::json& info() { return info_; }
    const nlohmann::json& info() const { return info_; }

 private:
    void normalize();

    Vartype vartype_ = Vartype::Binary;
    std::size_t num_variables_ = 0;
    std::vector<SampleRecord> records_;
    nlohmann::json info_ = nlohmann::json::object();
};

/// Recomputes energies on `model` for a set expressed in the other
/// convention, converting assignments along the way.
SampleSet to_binary(const SampleSet& spins, const QuboModel& model);
SampleSet to_spin(const SampleSet& bits, const IsingModel& model);

/// `{"solutions":[{"assignment":[...],"energy":E,"occurrences":k}...],"info":{...}}`.
/// `broken_chains` is emitted only when nonzero.
nlohmann::json to_json(const SampleSet& samples);
SampleSet sample_set_from_json(const nlohmann::json& document, Vartype vartype);

}  // namespace qastat
