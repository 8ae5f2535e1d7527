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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qastat/errors.hpp"

namespace qastat {

enum class Vartype { Binary, Spin };

inline const char* to_string(Vartype vartype) {
    return vartype == Vartype::Binary ? "qubo" : "ising";
}

inline bool in_domain(Vartype vartype, std::int8_t value) {
    return vartype == Vartype::Binary ? (value == 0 || value == 1) : (value == -1 || value == 1);
}

/// A binary assignment tagged with its variable convention.
struct Assignment {
    std::vector<std::int8_t> values;
    Vartype convention = Vartype::Binary;
};

/// Quadratic pseudo-boolean energy
///
///     E(x) = sum_i linear_i x_i + sum_{i<j} quadratic_ij x_i x_j + offset
///
/// over x in {0,1}^n (Binary) or {-1,+1}^n (Spin). Interactions are stored
/// sparsely, keyed by (i, j) with i < j. Absent keys are zero.
template <Vartype V>
class QuadraticModel {
 public:
    using Edge = std::pair<std::size_t, std::size_t>;
    static constexpr Vartype vartype = V;

    QuadraticModel() = default;
    explicit QuadraticModel(std::size_t num_variables, double offset = 0.0)
            : linear_(num_variables, 0.0), offset_(checked(offset)) {}

    std::size_t num_variables() const { return linear_.size(); }
    std::size_t num_interactions() const { return quadratic_.size(); }

    double offset() const { return offset_; }
    void set_offset(double value) { offset_ = checked(value); }
    void add_offset(double value) { offset_ = checked(offset_ + value); }

    double linear(std::size_t i) const { return linear_.at(check_index(i)); }
    void set_linear(std::size_t i, double value) { linear_[check_index(i)] = checked(value); }
    void add_linear(std::size_t i, double value) {
        check_index(i);
        linear_[i] = checked(linear_[i] + value);
    }

    double quadratic(std::size_t i, std::size_t j) const {
        auto it = quadratic_.find(key(i, j));
        return it == quadratic_.end() ? 0.0 : it->second;
    }
    bool has_interaction(std::size_t i, std::size_t j) const {
        return quadratic_.count(key(i, j)) != 0;
    }
    void set_quadratic(std::size_t i, std::size_t j, double value) {
        quadratic_[key(i, j)] = checked(value);
    }
    void add_quadratic(std::size_t i, std::size_t j, double value) {
        double& slot = quadratic_[key(i, j)];
        slot = checked(slot + value);
    }

    const std::vector<double>& linear_biases() const { return linear_; }
    const std::map<Edge, double>& quadratic_biases() const { return quadratic_; }

    /// Energy of a raw value vector. Values must lie in this model's domain.
    double energy(std::span<const std::int8_t> values) const {
        if (values.size() != linear_.size()) {
            throw InvalidArgument("assignment length " + std::to_string(values.size()) +
                                  " does not match model size " +
                                  std::to_string(linear_.size()));
        }
        double total = offset_;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!in_domain(V, values[i])) {
                throw InvalidArgument(std::string("value outside the ") + to_string(V) +
                                      " domain at index " + std::to_string(i));
            }
            total += linear_[i] * values[i];
        }
        for (const auto& [edge, bias] : quadratic_) {
            total += bias * values[edge.first] * values[edge.second];
        }
        return total;
    }

    double energy(const Assignment& assignment) const {
        if (assignment.convention != V) {
            throw InvalidArgument(std::string("assignment convention ") +
                                  to_string(assignment.convention) + " does not match model " +
                                  to_string(V));
        }
        return energy(std::span<const std::int8_t>(assignment.values));
    }

    friend bool operator==(const QuadraticModel&, const QuadraticModel&) = default;

 private:
    std::size_t check_index(std::size_t i) const {
        if (i >= linear_.size()) {
            throw InvalidArgument("variable index " + std::to_string(i) + " out of range [0, " +
                                  std::to_string(linear_.size()) + ")");
        }
        return i;
    }

    Edge key(std::size_t i, std::size_t j) const {
        check_index(i);
        check_index(j);
        if (i == j) throw InvalidArgument("self-interaction on variable " + std::to_string(i));
        return i < j ? Edge{i, j} : Edge{j, i};
    }

    static double checked(double value) {
        if (!std::isfinite(value)) throw InvalidArgument("non-finite coefficient");
        return value;
    }

    std::vector<double> linear_;
    std::map<Edge, double> quadratic_;
    double offset_ = 0.0;
};

using QuboModel = QuadraticModel<Vartype::Binary>;
using IsingModel = QuadraticModel<Vartype::Spin>;

/// Admissible coefficient box of the target hardware, in Ising form.
struct HardwareRange {
    double h_min = -2.0;
    double h_max = 2.0;
    double j_min = -4.0;
    double j_max = 1.0;

    /// Throws InvalidArgument unless h_min < 0 < h_max and j_min < 0 <= j_max.
    void validate() const;
};

/// Substitutes q = (1 + s) / 2. Energies agree under 0 <-> -1, 1 <-> +1.
IsingModel qubo_to_ising(const QuboModel& model);

/// Substitutes s = 2q - 1.
QuboModel ising_to_qubo(const IsingModel& model);

std::vector<std::int8_t> bits_to_spins(std::span<const std::int8_t> bits);
std::vector<std::int8_t> spins_to_bits(std::span<const std::int8_t> spins);

struct RescaledModel {
    IsingModel model;
    double scale = 1.0;
};

/// Divides every coefficient (and the offset) by one positive scale, the
/// smallest value >= 1 that brings all h and J into `range`. The argmin set
/// is unchanged.
RescaledModel rescale_to_hardware(const IsingModel& model, const HardwareRange& range = {});

/// Dense row-major n x n upper-triangular Q with the linear terms on the
/// diagonal, so that x'Qx + offset reproduces the energy for x in {0,1}^n.
std::vector<double> upper_triangular_matrix(const QuboModel& model);

}  // namespace qastat
