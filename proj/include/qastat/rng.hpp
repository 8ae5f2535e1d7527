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

#include <cstdint>
#include <random>

namespace qastat {

/// Seed of the independent substream `stream` under `seed`. Stream 0 maps
/// to `seed` itself so a top-level call and its first substream coincide.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    if (stream == 0) return seed;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x5eedu};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Engine for one read. Reads never share engine state, so results do not
/// depend on which thread executes them.
inline std::mt19937_64 read_engine(std::uint64_t seed, std::uint64_t read_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(read_index),
                      static_cast<std::uint32_t>(read_index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace qastat
