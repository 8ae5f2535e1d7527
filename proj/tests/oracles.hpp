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

// Brute-force reference computations shared by the tests. Nothing in here
// calls into the library except to build models from raw coefficients.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "qastat/model.hpp"

namespace qastat::testing {

/// Upper-triangular coefficient table: q[i][i] linear, q[i][j] (i < j)
/// quadratic.
struct DenseQubo {
    std::size_t n = 0;
    std::vector<std::vector<double>> q;
    double offset = 0.0;

    double energy(const std::vector<std::int8_t>& bits) const {
        double total = offset;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) total += q[i][j] * bits[i] * bits[j];
        }
        return total;
    }

    QuboModel model() const {
        QuboModel m(n, offset);
        for (std::size_t i = 0; i < n; ++i) {
            m.set_linear(i, q[i][i]);
            for (std::size_t j = i + 1; j < n; ++j) {
                if (q[i][j] != 0.0) m.set_quadratic(i, j, q[i][j]);
            }
        }
        return m;
    }
};

inline DenseQubo random_qubo(std::size_t n, std::mt19937_64& rng, double density = 1.0,
                             double low = -1.0, double high = 1.0) {
    std::uniform_real_distribution<double> coef(low, high);
    std::bernoulli_distribution keep(density);
    DenseQubo d{n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        d.q[i][i] = coef(rng);
        for (std::size_t j = i + 1; j < n; ++j) d.q[i][j] = keep(rng) ? coef(rng) : 0.0;
    }
    d.offset = coef(rng);
    return d;
}

inline std::vector<std::int8_t> bits_of(std::uint64_t mask, std::size_t n) {
    std::vector<std::int8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::int8_t>((mask >> i) & 1u);
    return bits;
}

inline std::vector<std::int8_t> spins_of(std::uint64_t mask, std::size_t n) {
    std::vector<std::int8_t> spins(n);
    for (std::size_t i = 0; i < n; ++i) spins[i] = ((mask >> i) & 1u) ? 1 : -1;
    return spins;
}

struct BruteForceMinimum {
    double energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> argmin;
};

/// Exhaustive minimum of any callable energy over {0,1}^n masks.
template <class Energy>
BruteForceMinimum brute_force_minimum(std::size_t n, Energy&& energy, double tol = 1e-9) {
    BruteForceMinimum best;
    std::vector<double> all(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < all.size(); ++mask) {
        all[mask] = energy(mask);
        best.energy = std::min(best.energy, all[mask]);
    }
    for (std::uint64_t mask = 0; mask < all.size(); ++mask) {
        if (all[mask] <= best.energy + tol) best.argmin.push_back(mask);
    }
    return best;
}

/// Upper-tail probability of Pearson's statistic; bins with tiny expected
/// counts are pooled into one.
inline double chi_square_p_value(const std::vector<double>& observed,
                                 const std::vector<double>& probabilities, double total) {
    double statistic = 0.0;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    std::size_t bins = 0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        const double expected = probabilities[k] * total;
        if (expected < 5.0) {
            pooled_obs += observed[k];
            pooled_exp += expected;
            continue;
        }
        statistic += (observed[k] - expected) * (observed[k] - expected) / expected;
        ++bins;
    }
    if (pooled_exp > 0.0) {
        statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++bins;
    }
    if (bins < 2) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(bins - 1));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

inline std::vector<double> boltzmann_probabilities(const std::vector<double>& energies,
                                                   double tau) {
    double lowest = std::numeric_limits<double>::infinity();
    for (double e : energies) lowest = std::min(lowest, e);
    std::vector<double> p(energies.size());
    double z = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        p[k] = std::exp(-(energies[k] - lowest) / tau);
        z += p[k];
    }
    for (auto& v : p) v /= z;
    return p;
}

/// Scale factor that brings an Ising model inside h in [-2, 2], J in [-4, 1].
inline double default_range_scale(const std::vector<double>& h,
                                  const std::vector<double>& couplings) {
    double scale = 1.0;
    for (double v : h) scale = std::max(scale, std::abs(v) / 2.0);
    for (double j : couplings) scale = std::max(scale, j > 0.0 ? j / 1.0 : -j / 4.0);
    return scale;
}

inline double normal_log_pdf(double x, double mean, double sd) {
    return std::log(boost::math::pdf(boost::math::normal(mean, sd), x));
}

/// Central finite differences of f at (a, b); returns {fa, fb, faa, fab, fbb}.
template <class F>
std::vector<double> finite_differences(F&& f, double a, double b, double step = 1e-4) {
    const double fa = (f(a + step, b) - f(a - step, b)) / (2 * step);
    const double fb = (f(a, b + step) - f(a, b - step)) / (2 * step);
    const double faa = (f(a + step, b) - 2 * f(a, b) + f(a - step, b)) / (step * step);
    const double fbb = (f(a, b + step) - 2 * f(a, b) + f(a, b - step)) / (step * step);
    const double fab = (f(a + step, b + step) - f(a + step, b - step) - f(a - step, b + step) +
                        f(a - step, b - step)) /
                       (4 * step * step);
    return {fa, fb, faa, fab, fbb};
}

/// True when no two of the given (row, col) points share a row, column or
/// diagonal.
inline bool non_attacking(const std::vector<std::pair<std::size_t, std::size_t>>& points) {
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            const auto dr = static_cast<long>(points[a].first) - static_cast<long>(points[b].first);
            const auto dc =
                    static_cast<long>(points[a].second) - static_cast<long>(points[b].second);
            if (dr == 0 || dc == 0 || std::labs(dr) == std::labs(dc)) return false;
        }
    }
    return true;
}

}  // namespace qastat::testing
