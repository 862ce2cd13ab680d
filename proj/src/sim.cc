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

#include "kennedy/sim.h"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "kennedy/errors.h"
#include "kennedy/rng.h"
#include "kennedy/tcspc.h"

namespace kennedy {

std::string_view to_string(BitPattern p) {
    return p == BitPattern::kAlternatingMeander ? "alternating" : "pseudorandom";
}

BitPattern bit_pattern_from_string(std::string_view s) {
    if (s == "alternating" || s == "alternating_meander" || s == "meander") {
        return BitPattern::kAlternatingMeander;
    }
    if (s == "pseudorandom") {
        return BitPattern::kPseudorandom;
    }
    throw DomainError("unknown bit pattern '" + std::string(s) + "'");
}

BitSequence generate_bits(std::int64_t n, BitPattern pattern, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("generate_bits: n must be >= 1");
    }
    BitSequence out;
    out.pattern = pattern;
    out.bits.resize(static_cast<std::size_t>(n));
    if (pattern == BitPattern::kAlternatingMeander) {
        for (std::size_t k = 0; k < out.bits.size(); ++k) {
            out.bits[k] = (k % 2 == 0) ? 1 : 0;
        }
        return out;
    }
    Rng rng(seed);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < out.bits.size(); ++k) {
        if (k % 64 == 0) {
            word = rng();
        }
        out.bits[k] = static_cast<std::uint8_t>((word >> (k % 64)) & 1);
    }
    return out;
}

namespace {

// Runs body(chunk_index) for every chunk on up to `threads` workers.
template <typename Body>
void for_each_chunk(std::size_t n_chunks, unsigned threads, Body body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
    if (threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            body(c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t c = next++; c < n_chunks; c = next++) {
                body(c);
            }
        });
    }
}

struct BinMeans {
    double by_bit[2];
};

BinMeans bin_means(const SignalParams &s, const ReceiverModel &r) {
    s.validate();
    r.validate();
    return {{mean_counts(0, s, r), mean_counts(1, s, r)}};
}

std::size_t chunk_count(std::size_t n_bins) { return (n_bins + kChunkBins - 1) / kChunkBins; }

}  // namespace

std::vector<std::int64_t> simulate_bin_counts(const BitSequence &bits, const SignalParams &s,
                                              const ReceiverModel &r, std::uint64_t seed, unsigned threads) {
    BinMeans means = bin_means(s, r);
    std::vector<std::int64_t> counts(bits.size());
    for_each_chunk(chunk_count(bits.size()), threads, [&](std::size_t c) {
        Rng rng(derive_seed(seed, 2 * c));
        std::size_t end = std::min(bits.size(), (c + 1) * kChunkBins);
        for (std::size_t k = c * kChunkBins; k < end; ++k) {
            counts[k] = sample_poisson(rng, means.by_bit[bits.bits[k]]);
        }
    });
    return counts;
}

std::vector<PhotonEventRecord> simulate_event_stream(const BitSequence &bits, const SignalParams &s,
                                                     const ReceiverModel &r, std::uint64_t seed,
                                                     unsigned threads) {
    BinMeans means = bin_means(s, r);
    const std::int64_t bin = r.timing.bin_duration_ps();
    const std::int64_t start = r.timing.start_offset_ps;
    const std::int64_t resolution = r.detector.timing_resolution_ps;

    std::vector<std::vector<PhotonEventRecord>> chunks(chunk_count(bits.size()));
    for_each_chunk(chunks.size(), threads, [&](std::size_t c) {
        Rng count_rng(derive_seed(seed, 2 * c));
        Rng time_rng(derive_seed(seed, 2 * c + 1));
        std::vector<PhotonEventRecord> &out = chunks[c];
        std::size_t end = std::min(bits.size(), (c + 1) * kChunkBins);
        for (std::size_t k = c * kChunkBins; k < end; ++k) {
            std::int64_t n = sample_poisson(count_rng, means.by_bit[bits.bits[k]]);
            std::size_t first = out.size();
            std::int64_t bin_start = start + static_cast<std::int64_t>(k) * bin;
            for (std::int64_t i = 0; i < n; ++i) {
                auto offset = static_cast<std::int64_t>(uniform01(time_rng) * static_cast<double>(bin));
                std::int64_t t = bin_start + std::min(offset, bin - 1);
                out.push_back({t - t % resolution});
            }
            std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
        }
    });

    std::size_t total = 0;
    for (const auto &c : chunks) {
        total += c.size();
    }
    std::vector<PhotonEventRecord> merged;
    merged.reserve(total);
    for (const auto &c : chunks) {
        merged.insert(merged.end(), c.begin(), c.end());
    }
    if (r.detector.dead_time_ps == 0) {
        return merged;
    }
    return apply_dead_time(merged, r.detector.dead_time_ps);
}

std::vector<PhotonEventRecord> apply_dead_time(std::span<const PhotonEventRecord> events,
                                               std::int64_t dead_time_ps) {
    if (dead_time_ps < 0) {
        throw DomainError("apply_dead_time: negative dead time");
    }
    std::vector<PhotonEventRecord> kept;
    kept.reserve(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (k > 0 && events[k].timestamp_ps < events[k - 1].timestamp_ps) {
            throw DomainError("apply_dead_time: events not sorted at index " + std::to_string(k));
        }
        if (kept.empty() || events[k].timestamp_ps >= kept.back().timestamp_ps + dead_time_ps) {
            kept.push_back(events[k]);
        }
    }
    return kept;
}

SimulationResult simulate(const BitSequence &bits, const SignalParams &s, const ReceiverModel &r,
                          std::uint64_t seed, unsigned threads) {
    SimulationResult result;
    result.tx_bits = bits;
    result.seed = seed;
    result.signal = s;
    result.model = r;
    result.model.timing.n_bits = static_cast<std::int64_t>(bits.size());
    result.events = simulate_event_stream(bits, s, result.model, seed, threads);
    result.bin_counts = bin_events(result.events, result.model.timing);
    return result;
}

}  // namespace kennedy
