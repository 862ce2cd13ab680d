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

#ifndef KENNEDY_SIM_H
#define KENNEDY_SIM_H

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kennedy/bounds.h"
#include "kennedy/model.h"

namespace kennedy {

enum class BitPattern {
    kAlternatingMeander,
    kPseudorandom,
};

std::string_view to_string(BitPattern p);
BitPattern bit_pattern_from_string(std::string_view s);

struct BitSequence {
    std::vector<std::uint8_t> bits;
    BitPattern pattern = BitPattern::kAlternatingMeander;

    std::size_t size() const { return bits.size(); }
    bool operator==(const BitSequence &) const = default;
};

struct PhotonEventRecord {
    std::int64_t timestamp_ps;

    auto operator<=>(const PhotonEventRecord &) const = default;
};

struct SimulationResult {
    BitSequence tx_bits;
    std::vector<PhotonEventRecord> events;
    /// Events per bin after dead time, binned without guard margins.
    std::vector<std::int64_t> bin_counts;
    std::uint64_t seed;
    ReceiverModel model;
    SignalParams signal;
};

/// Bins per independently seeded chunk. Chunk k draws from generators seeded
/// by derive_seed(seed, 2k) (counts) and derive_seed(seed, 2k + 1) (arrival
/// times), so the output does not depend on how chunks are scheduled.
inline constexpr std::size_t kChunkBins = 4096;

/// Alternating pattern is 1,0,1,0,...; the pseudorandom pattern takes the 64
/// bits of each draw of Rng(seed) from least to most significant.
BitSequence generate_bits(std::int64_t n, BitPattern pattern, std::uint64_t seed = 0);

/// One independent Poisson count per bin with mean mean_counts(bit, s, r).
/// `threads` = 0 picks the hardware concurrency.
std::vector<std::int64_t> simulate_bin_counts(const BitSequence &bits, const SignalParams &s,
                                              const ReceiverModel &r, std::uint64_t seed,
                                              unsigned threads = 0);

/// Time-tagged clicks of the whole record. Each bin draws the same counts as
/// simulate_bin_counts() with the same seed, places them uniformly inside the
/// bin, floors them to the timing resolution, and the merged stream passes
/// through apply_dead_time().
std::vector<PhotonEventRecord> simulate_event_stream(const BitSequence &bits, const SignalParams &s,
                                                     const ReceiverModel &r, std::uint64_t seed,
                                                     unsigned threads = 0);

/// Non-paralyzable dead time: an event survives iff it is at least
/// dead_time_ps after the last surviving event. Throws DomainError on
/// unsorted input.
std::vector<PhotonEventRecord> apply_dead_time(std::span<const PhotonEventRecord> events,
                                               std::int64_t dead_time_ps);

/// Event stream plus its per-bin counts. `bits.size()` overrides
/// r.timing.n_bits.
SimulationResult simulate(const BitSequence &bits, const SignalParams &s, const ReceiverModel &r,
                          std::uint64_t seed, unsigned threads = 0);

}  // namespace kennedy

#endif  // KENNEDY_SIM_H
