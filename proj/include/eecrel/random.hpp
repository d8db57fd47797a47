// Copyright 2026 The eecrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EECREL_RANDOM_HPP
#define EECREL_RANDOM_HPP

#include <cstdint>
#include <random>

namespace eecrel {

/// Random stream used throughout the library. std::mt19937_64 is fully
/// specified by the standard, so sequences are identical on every platform.
using Engine = std::mt19937_64;

/// Version tag mixed into every derived stream. Bump it only together with a
/// note in the README, since it changes every simulated number.
inline constexpr std::uint32_t kStreamVersion = 1;

/// Stream for replication block `index` of a run seeded with `seed`.
///
/// The key (seed, index, version) is expanded through std::seed_seq, whose
/// algorithm is also fixed by the standard. Distinct indices give
/// statistically independent streams, and a block's stream does not depend
/// on which thread runs it.
inline Engine substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      kStreamVersion};
    return Engine(seq);
}

/// Derives a child seed, e.g. one per point of a sweep.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    Engine e = substream(seed, index);
    return e();
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
/// std::uniform_real_distribution is implementation-defined, so it is
/// avoided for reproducibility.
inline double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1): bucket midpoints of the top
/// 53 bits. Inverse-transform draws from it are strictly positive and finite.
inline double uniform_open01(Engine& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform double in [lo, hi].
inline double uniform(Engine& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace eecrel

#endif // EECREL_RANDOM_HPP
