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

// Serial reference against the OpenMP samplers on dense random problems.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "qastat/model.hpp"
#include "qastat/samplers.hpp"

namespace {

qastat::QuboModel dense_qubo(std::size_t n) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    qastat::QuboModel model(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.set_linear(i, coef(rng));
        for (std::size_t j = i + 1; j < n; ++j) model.set_quadratic(i, j, coef(rng));
    }
    return model;
}

qastat::SamplerParams anneal_params(std::size_t reads) {
    qastat::SamplerParams params;
    params.num_reads = reads;
    params.sa_sweeps = 200;
    params.seed = 7;
    return params;
}

void BM_ExactSerial(benchmark::State& state) {
    const auto model = dense_qubo(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qastat::serial::exact_solve(model));
}

void BM_ExactParallel(benchmark::State& state) {
    const auto model = dense_qubo(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qastat::exact_solve(model));
}

void BM_AnnealSerial(benchmark::State& state) {
    const auto model = dense_qubo(32);
    const auto params = anneal_params(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qastat::serial::simulated_anneal(model, params));
}

void BM_AnnealParallel(benchmark::State& state) {
    const auto model = dense_qubo(32);
    const auto params = anneal_params(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qastat::simulated_anneal(model, params));
}

void BM_BoltzmannSerial(benchmark::State& state) {
    const auto model = dense_qubo(static_cast<std::size_t>(state.range(0)));
    const auto params = anneal_params(1000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qastat::serial::noisy_boltzmann_sample(model, {}, params));
    }
}

void BM_BoltzmannParallel(benchmark::State& state) {
    const auto model = dense_qubo(static_cast<std::size_t>(state.range(0)));
    const auto params = anneal_params(1000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qastat::noisy_boltzmann_sample(model, {}, params));
    }
}

}  // namespace

BENCHMARK(BM_ExactSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoltzmannSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoltzmannParallel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
