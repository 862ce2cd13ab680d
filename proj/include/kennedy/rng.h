// Copyright 2026 The Kennedy Receiver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KENNEDY_RNG_H
#define KENNEDY_RNG_H

#include <cstdint>
#include <random>

namespace kennedy {

/// The simulator's only generator. std::mt19937_64 has a fully specified
/// output sequence, so seeded runs are reproducible across standard libraries.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-task `index` of a run seeded with `master`:
///   splitmix64(splitmix64(master) ^ (index * 0x9E3779B97F4A7C15 + 1)).
/// Depends only on (master, index), so chunked work is reproducible under any
/// scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng &rng);

/// Poisson variate with the given mean.
///  - mean < 30: inversion by sequential search from n = 0, one uniform draw.
///  - mean >= 30: Hormann's PTRS transformed rejection (1993).
/// mean == 0 returns 0 without consuming a draw.
std::int64_t sample_poisson(Rng &rng, double mean);

}  // namespace kennedy

#endif  // KENNEDY_RNG_H
