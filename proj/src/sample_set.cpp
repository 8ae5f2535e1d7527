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

#include "qastat/sample_set.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace qastat {

template <Vartype V>
SampleSet SampleSet::from_reads(const QuadraticModel<V>& model,
                                const std::vector<std::vector<std::int8_t>>& reads) {
    std::map<std::vector<std::int8_t>, std::size_t> counts;
    for (const auto& read : reads) ++counts[read];

    SampleSet samples(V, model.num_variables());
    samples.records_.reserve(counts.size());
    for (auto& [assignment, count] : counts) {
        const double energy = model.energy(std::span<const std::int8_t>(assignment));
        samples.records_.push_back({assignment, energy, count, 0});
    }
    samples.normalize();
    return samples;
}

template SampleSet SampleSet::from_reads(const QuboModel&,
                                         const std::vector<std::vector<std::int8_t>>&);
template SampleSet SampleSet::from_reads(const IsingModel&,
                                         const std::vector<std::vector<std::int8_t>>&);

const SampleRecord& SampleSet::lowest() const {
    if (records_.empty()) throw InvalidArgument("empty sample set");
    return records_.front();
}

std::size_t SampleSet::total_occurrences() const {
    return std::accumulate(records_.begin(), records_.end(), std::size_t{0},
                           [](std::size_t acc, const SampleRecord& r) { return acc + r.occurrences; });
}

void SampleSet::add(SampleRecord record) {
    if (record.assignment.size() != num_variables_) {
        throw InvalidArgument("record length does not match sample set");
    }
    records_.push_back(std::move(record));
    normalize();
}

void SampleSet::add_all(std::vector<SampleRecord> records) {
    for (auto& record : records) {
        if (record.assignment.size() != num_variables_) {
            throw InvalidArgument("record length does not match sample set");
        }
        records_.push_back(std::move(record));
    }
    normalize();
}

void SampleSet::normalize() {
    std::sort(records_.begin(), records_.end(), [](const SampleRecord& a, const SampleRecord& b) {
        return std::tie(a.energy, a.assignment, a.broken_chains) <
               std::tie(b.energy, b.assignment, b.broken_chains);
    });
    std::vector<SampleRecord> merged;
    merged.reserve(records_.size());
    for (auto& record : records_) {
        if (!merged.empty() && merged.back().assignment == record.assignment &&
            merged.back().broken_chains == record.broken_chains) {
            merged.back().occurrences += record.occurrences;
        } else {
            merged.push_back(std::move(record));
        }
    }
    records_ = std::move(merged);
}

SampleSet to_binary(const SampleSet& spins, const QuboModel& model) {
    if (spins.vartype() != Vartype::Spin) throw InvalidArgument("expected a spin sample set");
    SampleSet bits(Vartype::Binary, spins.num_variables());
    std::vector<SampleRecord> records;
    for (const auto& record : spins.records()) {
        auto assignment = spins_to_bits(record.assignment);
        const double energy = model.energy(std::span<const std::int8_t>(assignment));
        records.push_back({std::move(assignment), energy, record.occurrences, record.broken_chains});
    }
    bits.add_all(std::move(records));
    bits.info() = spins.info();
    return bits;
}

SampleSet to_spin(const SampleSet& bits, const IsingModel& model) {
    if (bits.vartype() != Vartype::Binary) throw InvalidArgument("expected a binary sample set");
    SampleSet spins(Vartype::Spin, bits.num_variables());
    std::vector<SampleRecord> records;
    for (const auto& record : bits.records()) {
        auto assignment = bits_to_spins(record.assignment);
        const double energy = model.energy(std::span<const std::int8_t>(assignment));
        records.push_back({std::move(assignment), energy, record.occurrences, record.broken_chains});
    }
    spins.add_all(std::move(records));
    spins.info() = bits.info();
    return spins;
}

nlohmann::json to_json(const SampleSet& samples) {
    nlohmann::json solutions = nlohmann::json::array();
    for (const auto& record : samples.records()) {
        nlohmann::json entry;
        nlohmann::json values = nlohmann::json::array();
        for (auto v : record.assignment) values.push_back(static_cast<int>(v));
        entry["assignment"] = std::move(values);
        entry["energy"] = record.energy;
        entry["occurrences"] = record.occurrences;
        if (record.broken_chains != 0) entry["broken_chains"] = record.broken_chains;
        solutions.push_back(std::move(entry));
    }
    return {{"solutions", std::move(solutions)}, {"info", samples.info()}};
}

SampleSet sample_set_from_json(const nlohmann::json& document, Vartype vartype) {
    const auto& solutions = document.at("solutions");
    const std::size_t n = solutions.empty() ? 0 : solutions.front().at("assignment").size();
    SampleSet samples(vartype, n);
    std::vector<SampleRecord> records;
    for (const auto& entry : solutions) {
        SampleRecord record;
        for (const auto& v : entry.at("assignment")) {
            const int value = v.get<int>();
            if (!in_domain(vartype, static_cast<std::int8_t>(value))) {
                throw InvalidArgument("assignment value outside the declared convention");
            }
            record.assignment.push_back(static_cast<std::int8_t>(value));
        }
        record.energy = entry.at("energy").get<double>();
        record.occurrences = entry.at("occurrences").get<std::size_t>();
        record.broken_chains = entry.value("broken_chains", std::size_t{0});
        records.push_back(std::move(record));
    }
    samples.add_all(std::move(records));
    if (document.contains("info")) samples.info() = document.at("info");
    return samples;
}

}  // namespace qastat
